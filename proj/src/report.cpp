#include "floatlab/report.hpp"

#include "json.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>

namespace floatlab {

namespace {

std::string num17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string num2(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f", v);
    return buf;
}

std::string num4(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.4g", v);
    return buf;
}

}  // namespace

std::string report_csv(const ConvergenceReport& rep, const std::vector<double>& ratio_err) {
    if (rep.points.empty()) throw NumericError("no data");
    std::string out = "delta,deficit,ratio,ratio_err\n";
    for (size_t i = 0; i < rep.points.size(); ++i) {
        const SweepPoint& p = rep.points[i];
        double e = i < ratio_err.size() ? ratio_err[i] : 0.0;
        out += num17(p.delta) + "," + num17(p.deficit) + "," + num17(p.ratio) + "," + num17(e) +
               "\n";
    }
    return out;
}

std::string report_json(const ConvergenceReport& rep) {
    if (rep.points.empty()) throw NumericError("no data");
    nlohmann::ordered_json j;
    j["experiment"] = rep.experiment;
    j["target"] = rep.target;
    j["limit"] = rep.fit.limit;
    j["rel_error"] = rep.rel_error;
    j["tolerance"] = rep.tolerance;
    j["pass"] = rep.pass;
    j["fit"] = {{"coeff", rep.fit.coeff}, {"beta", rep.fit.beta},
                {"residual", rep.fit.residual}};
    nlohmann::ordered_json pts = nlohmann::ordered_json::array();
    for (const SweepPoint& p : rep.points)
        pts.push_back({{"delta", p.delta}, {"deficit", p.deficit}, {"ratio", p.ratio}});
    j["points"] = std::move(pts);
    return j.dump(2) + "\n";
}

std::string report_svg(const ConvergenceReport& rep) {
    if (rep.points.empty()) throw NumericError("no data");
    const double W = 640, H = 440, L = 70, R = 610, T = 30, B = 390;

    double xlo = 1e300, xhi = -1e300, ylo = rep.target, yhi = rep.target;
    for (const SweepPoint& p : rep.points) {
        double lx = std::log10(p.delta);
        xlo = std::min(xlo, lx);
        xhi = std::max(xhi, lx);
        ylo = std::min(ylo, p.ratio);
        yhi = std::max(yhi, p.ratio);
    }
    if (xhi - xlo < 1e-12) xhi = xlo + 1;
    double pad = std::max(0.05 * (yhi - ylo), 1e-12 * std::max(std::abs(yhi), 1.0));
    ylo -= pad;
    yhi += pad;
    auto X = [&](double d) { return L + (std::log10(d) - xlo) / (xhi - xlo) * (R - L); };
    auto Y = [&](double r) { return B - (r - ylo) / (yhi - ylo) * (B - T); };

    std::string s;
    s += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + num2(W) + "\" height=\"" +
         num2(H) + "\" viewBox=\"0 0 " + num2(W) + " " + num2(H) + "\">\n";
    s += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    s += "<line x1=\"" + num2(L) + "\" y1=\"" + num2(B) + "\" x2=\"" + num2(R) + "\" y2=\"" +
         num2(B) + "\" stroke=\"black\"/>\n";
    s += "<line x1=\"" + num2(L) + "\" y1=\"" + num2(T) + "\" x2=\"" + num2(L) + "\" y2=\"" +
         num2(B) + "\" stroke=\"black\"/>\n";

    // delta ticks at the sweep points, ratio ticks at the extremes and target
    for (const SweepPoint& p : rep.points) {
        double x = X(p.delta);
        s += "<line x1=\"" + num2(x) + "\" y1=\"" + num2(B) + "\" x2=\"" + num2(x) + "\" y2=\"" +
             num2(B + 5) + "\" stroke=\"black\"/>\n";
        s += "<text x=\"" + num2(x) + "\" y=\"" + num2(B + 18) +
             "\" font-size=\"10\" text-anchor=\"middle\">" + num4(p.delta) + "</text>\n";
    }
    for (double r : {ylo + pad, yhi - pad, rep.target}) {
        double y = Y(r);
        s += "<line x1=\"" + num2(L - 5) + "\" y1=\"" + num2(y) + "\" x2=\"" + num2(L) +
             "\" y2=\"" + num2(y) + "\" stroke=\"black\"/>\n";
        s += "<text x=\"" + num2(L - 8) + "\" y=\"" + num2(y + 3) +
             "\" font-size=\"10\" text-anchor=\"end\">" + num4(r) + "</text>\n";
    }
    s += "<text x=\"" + num2(0.5 * (L + R)) + "\" y=\"" + num2(H - 12) +
         "\" font-size=\"12\" text-anchor=\"middle\">delta (log scale)</text>\n";
    s += "<text x=\"" + num2(0.5 * (L + R)) + "\" y=\"18\" font-size=\"12\" "
         "text-anchor=\"middle\">" + rep.experiment + ": scaled deficit vs delta</text>\n";

    double ty = Y(rep.target);
    s += "<line x1=\"" + num2(L) + "\" y1=\"" + num2(ty) + "\" x2=\"" + num2(R) + "\" y2=\"" +
         num2(ty) + "\" stroke=\"#c00\" stroke-dasharray=\"6 4\"/>\n";
    s += "<text x=\"" + num2(R) + "\" y=\"" + num2(ty - 5) +
         "\" font-size=\"10\" text-anchor=\"end\" fill=\"#c00\">target " + num4(rep.target) +
         "</text>\n";

    std::string poly;
    for (const SweepPoint& p : rep.points)
        poly += (poly.empty() ? "" : " ") + num2(X(p.delta)) + "," + num2(Y(p.ratio));
    s += "<polyline points=\"" + poly + "\" fill=\"none\" stroke=\"#06c\" stroke-width=\"1.5\"/>\n";
    for (const SweepPoint& p : rep.points)
        s += "<circle cx=\"" + num2(X(p.delta)) + "\" cy=\"" + num2(Y(p.ratio)) +
             "\" r=\"3\" fill=\"#06c\"/>\n";
    s += "</svg>\n";
    return s;
}

void emit_report(const ConvergenceReport& rep, const std::string& dir, const std::string& stem,
                 const std::vector<std::string>& formats, const std::vector<double>& ratio_err) {
    if (rep.points.empty()) throw NumericError("no data");
    auto write = [&](const std::string& ext, const std::string& content) {
        std::string path = dir + "/" + stem + "." + ext;
        std::ofstream out(path, std::ios::binary);
        if (!out) throw std::runtime_error("cannot write " + path);
        out << content;
        if (!out) throw std::runtime_error("cannot write " + path);
    };
    for (const std::string& f : formats) {
        if (f == "csv")
            write("csv", report_csv(rep, ratio_err));
        else if (f == "json")
            write("json", report_json(rep));
        else if (f == "svg")
            write("svg", report_svg(rep));
        else
            throw std::runtime_error("unknown output format '" + f + "'");
    }
}

}  // namespace floatlab
