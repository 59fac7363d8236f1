#include "floatlab/config.hpp"

#include "json.hpp"

#include <cmath>
#include <set>
#include <sstream>

namespace floatlab {

using json = nlohmann::ordered_json;

namespace {

const std::set<std::string> kExperiments = {"float-body", "float-func", "sconcave",
                                            "asa",        "converge",   "randpoly"};
const std::set<std::string> kConvergeQuantities = {"body", "function", "function_l1",
                                                   "sconcave"};
const std::set<std::string> kAsaQuantities = {"body_p",   "profile_p", "weighted",
                                              "exponential", "lambda", "sconcave",
                                              "lambda_sconcave", "gauge_identity"};

// Collects field-level problems; the parse throws once, with all of them.
struct Errors {
    std::vector<std::string> list;
    void add(const std::string& field, const std::string& what) {
        list.push_back(field + ": " + what);
    }
    void raise_if_any() const {
        if (list.empty()) return;
        std::ostringstream os;
        for (size_t i = 0; i < list.size(); ++i) os << (i ? "\n" : "") << list[i];
        throw ConfigError(os.str());
    }
};

void check_keys(const json& j, const std::string& where, const std::set<std::string>& allowed,
                Errors& err) {
    for (const auto& [key, _] : j.items())
        if (!allowed.count(key)) err.add(where.empty() ? key : where + "." + key, "unknown key");
}

double get_num(const json& j, const std::string& where, const std::string& key, double fallback,
               Errors& err) {
    if (!j.contains(key)) return fallback;
    const json& v = j.at(key);
    if (!v.is_number()) {
        err.add(where + key, "expected a number");
        return fallback;
    }
    return v.get<double>();
}

int get_int(const json& j, const std::string& where, const std::string& key, int fallback,
            Errors& err) {
    if (!j.contains(key)) return fallback;
    const json& v = j.at(key);
    if (!v.is_number_integer()) {
        err.add(where + key, "expected an integer");
        return fallback;
    }
    return v.get<int>();
}

std::string get_str(const json& j, const std::string& where, const std::string& key,
                    const std::string& fallback, Errors& err) {
    if (!j.contains(key)) return fallback;
    const json& v = j.at(key);
    if (!v.is_string()) {
        err.add(where + key, "expected a string");
        return fallback;
    }
    return v.get<std::string>();
}

Vec get_vec(const json& j, const std::string& where, const std::string& key, Errors& err) {
    Vec out;
    if (!j.contains(key)) return out;
    const json& v = j.at(key);
    if (!v.is_array()) {
        err.add(where + key, "expected an array of numbers");
        return out;
    }
    for (const json& e : v) {
        if (!e.is_number()) {
            err.add(where + key, "expected an array of numbers");
            return {};
        }
        out.push_back(e.get<double>());
    }
    return out;
}

BodySpec parse_body(const json& j, Errors& err) {
    BodySpec b;
    check_keys(j, "body", {"shape", "center", "radius", "semi_axes", "vertices"}, err);
    b.shape = get_str(j, "body.", "shape", "ball", err);
    b.center = get_vec(j, "body.", "center", err);
    b.radius = get_num(j, "body.", "radius", 1.0, err);
    b.semi_axes = get_vec(j, "body.", "semi_axes", err);
    if (j.contains("vertices")) {
        const json& v = j.at("vertices");
        if (!v.is_array())
            err.add("body.vertices", "expected an array of points");
        else
            for (size_t i = 0; i < v.size(); ++i) {
                json row = json::object();
                row["v"] = v[i];
                b.vertices.push_back(get_vec(row, "body.", "v", err));
            }
    }
    if (b.shape == "ball") {
        if (b.center.empty()) err.add("body.center", "required for a ball");
        if (b.radius <= 0) err.add("body.radius", "must be positive");
    } else if (b.shape == "ellipsoid") {
        if (b.semi_axes.empty()) err.add("body.semi_axes", "required for an ellipsoid");
        for (double a : b.semi_axes)
            if (a <= 0) err.add("body.semi_axes", "must be positive");
        if (!b.center.empty() && b.center.size() != b.semi_axes.size())
            err.add("body.center", "dimension mismatch with semi_axes");
    } else if (b.shape == "polytope") {
        if (b.vertices.size() < 3)
            err.add("body.vertices", "need at least dim+1 vertices");
        else
            for (const Vec& v : b.vertices)
                if (v.size() != b.vertices[0].size())
                    err.add("body.vertices", "inconsistent point dimensions");
    } else {
        err.add("body.shape", "unknown shape '" + b.shape + "'");
    }
    return b;
}

FunctionSpec parse_function(const json& j, Errors& err) {
    FunctionSpec f;
    check_keys(j, "function", {"form", "diag", "slopes", "offsets"}, err);
    f.form = get_str(j, "function.", "form", "quadratic", err);
    f.diag = get_vec(j, "function.", "diag", err);
    if (j.contains("slopes")) {
        const json& v = j.at("slopes");
        if (!v.is_array())
            err.add("function.slopes", "expected an array of points");
        else
            for (const json& e : v) {
                json row = json::object();
                row["v"] = e;
                f.slopes.push_back(get_vec(row, "function.", "v", err));
            }
    }
    f.offsets = get_vec(j, "function.", "offsets", err);
    if (f.form == "quadratic") {
        if (f.diag.empty()) err.add("function.diag", "required for a quadratic");
        for (double d : f.diag)
            if (d <= 0) err.add("function.diag", "must be positive");
    } else if (f.form == "piecewise_affine") {
        if (f.slopes.empty()) err.add("function.slopes", "required for piecewise_affine");
        if (f.offsets.size() != f.slopes.size())
            err.add("function.offsets", "must match slopes in length");
    } else {
        err.add("function.form", "unknown form '" + f.form + "'");
    }
    return f;
}

SconcaveSpec parse_sconcave(const json& j, Errors& err) {
    SconcaveSpec f;
    check_keys(j, "sconcave", {"n", "s", "height", "semi_axes"}, err);
    f.n = get_int(j, "sconcave.", "n", 1, err);
    f.s = get_int(j, "sconcave.", "s", 1, err);
    f.height = get_num(j, "sconcave.", "height", 1.0, err);
    f.semi_axes = get_vec(j, "sconcave.", "semi_axes", err);
    if (f.semi_axes.empty()) f.semi_axes = Vec(static_cast<size_t>(std::max(f.n, 1)), 1.0);
    if (f.n < 1 || f.n > 2) err.add("sconcave.n", "supported for n in {1, 2}");
    if (f.s < 1) err.add("sconcave.s", "must be a positive integer");
    if (f.height <= 0) err.add("sconcave.height", "must be positive");
    if (static_cast<int>(f.semi_axes.size()) != f.n)
        err.add("sconcave.semi_axes", "dimension mismatch with n");
    for (double a : f.semi_axes)
        if (a <= 0) err.add("sconcave.semi_axes", "must be positive");
    return f;
}

}  // namespace

int BodySpec::dim() const {
    if (shape == "ball") return static_cast<int>(center.size());
    if (shape == "ellipsoid") return static_cast<int>(semi_axes.size());
    return vertices.empty() ? 0 : static_cast<int>(vertices[0].size());
}

ConvexBody BodySpec::make() const {
    if (shape == "ball") return ConvexBody::ball(center, radius);
    if (shape == "ellipsoid") {
        Vec c = center.empty() ? Vec(semi_axes.size(), 0.0) : center;
        return ConvexBody::ellipsoid(c, semi_axes);
    }
    return ConvexBody::vpolytope(dim(), vertices);
}

int FunctionSpec::dim() const {
    if (form == "quadratic") return static_cast<int>(diag.size());
    return slopes.empty() ? 0 : static_cast<int>(slopes[0].size());
}

ConvexFunction FunctionSpec::make() const {
    if (form == "quadratic") {
        int n = dim();
        Mat A(n);
        for (int i = 0; i < n; ++i) A(i, i) = diag[static_cast<size_t>(i)];
        return ConvexFunction::quadratic(A, Vec(static_cast<size_t>(n), 0.0), 0.0);
    }
    std::vector<std::pair<Vec, double>> pieces;
    for (size_t i = 0; i < slopes.size(); ++i) pieces.push_back({slopes[i], offsets[i]});
    return ConvexFunction::piecewise_affine(dim(), std::move(pieces));
}

SConcaveFunction SconcaveSpec::make() const {
    double h = height;
    Vec a = semi_axes;
    auto g = [h, a](const Vec& x) {
        double q = 0;
        for (size_t i = 0; i < a.size(); ++i) q += x[i] * x[i] / (a[i] * a[i]);
        return h * (1 - q);
    };
    ConvexBody support = n == 1 ? ConvexBody::ball({0.0}, a[0])
                                : ConvexBody::ellipsoid(Vec(a.size(), 0.0), a);
    return SConcaveFunction::from_concave(n, s, g, std::move(support));
}

Weight WeightSpec::make(int ambient_dim) const {
    if (kind == "constant") return Weight::constant(ambient_dim, value);
    return Weight::exp_height(ambient_dim);
}

QuadratureSpec ExperimentConfig::quadrature() const {
    QuadratureSpec q;
    q.abs_tol = abs_tol;
    q.rel_tol = rel_tol;
    return q;
}

ExperimentConfig parse_config(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        throw ConfigError(std::string("document: ") + e.what());
    }
    if (!j.is_object()) throw ConfigError("document: expected a top-level object");

    Errors err;
    check_keys(j, "",
               {"experiment", "quantity", "body", "function", "sconcave", "weight", "sweep",
                "delta", "directions", "slope_count", "truncation", "abs_tol", "rel_tol", "p",
                "lambda", "tolerance", "target", "seed", "mc_points", "mc_trials"},
               err);

    ExperimentConfig cfg;
    cfg.experiment = get_str(j, "", "experiment", "", err);
    if (!kExperiments.count(cfg.experiment))
        err.add("experiment", cfg.experiment.empty() ? "required"
                                                     : "unknown value '" + cfg.experiment + "'");
    cfg.quantity = get_str(j, "", "quantity", "", err);

    if (j.contains("body") && j.at("body").is_object())
        cfg.body = parse_body(j.at("body"), err);
    else if (j.contains("body"))
        err.add("body", "expected an object");
    if (j.contains("function") && j.at("function").is_object())
        cfg.function = parse_function(j.at("function"), err);
    else if (j.contains("function"))
        err.add("function", "expected an object");
    if (j.contains("sconcave") && j.at("sconcave").is_object())
        cfg.sconcave = parse_sconcave(j.at("sconcave"), err);
    else if (j.contains("sconcave"))
        err.add("sconcave", "expected an object");

    if (j.contains("weight")) {
        const json& w = j.at("weight");
        if (!w.is_object()) {
            err.add("weight", "expected an object");
        } else {
            check_keys(w, "weight", {"kind", "value"}, err);
            cfg.weight.kind = get_str(w, "weight.", "kind", "constant", err);
            cfg.weight.value = get_num(w, "weight.", "value", 1.0, err);
            if (cfg.weight.kind != "constant" && cfg.weight.kind != "exponential_height")
                err.add("weight.kind", "unknown kind '" + cfg.weight.kind + "'");
            if (cfg.weight.value <= 0) err.add("weight.value", "must be positive");
        }
    }
    if (j.contains("sweep")) {
        const json& s = j.at("sweep");
        if (!s.is_object()) {
            err.add("sweep", "expected an object");
        } else {
            check_keys(s, "sweep", {"delta0", "q", "k"}, err);
            cfg.sweep.delta0 = get_num(s, "sweep.", "delta0", 1e-2, err);
            cfg.sweep.q = get_num(s, "sweep.", "q", 0.25, err);
            cfg.sweep.k = get_int(s, "sweep.", "k", 5, err);
            if (cfg.sweep.delta0 <= 0) err.add("sweep.delta0", "must be positive");
            if (cfg.sweep.q <= 0 || cfg.sweep.q >= 1) err.add("sweep.q", "must lie in (0, 1)");
            if (cfg.sweep.k < 3) err.add("sweep.k", "need at least 3 sweep points");
        }
    }

    cfg.delta = get_num(j, "", "delta", 1e-2, err);
    cfg.directions = get_int(j, "", "directions", 2048, err);
    cfg.slope_count = get_int(j, "", "slope_count", 300, err);
    cfg.truncation = get_num(j, "", "truncation", 30.0, err);
    cfg.abs_tol = get_num(j, "", "abs_tol", 1e-9, err);
    cfg.rel_tol = get_num(j, "", "rel_tol", 1e-8, err);
    cfg.p = get_num(j, "", "p", 1.0, err);
    cfg.lambda = get_num(j, "", "lambda", 0.0, err);
    cfg.tolerance = get_num(j, "", "tolerance", 0.02, err);
    if (j.contains("target")) cfg.target = get_num(j, "", "target", 0.0, err);
    if (j.contains("seed")) {
        const json& s = j.at("seed");
        if (s.is_number_unsigned() || s.is_number_integer())
            cfg.seed = s.get<std::uint64_t>();
        else
            err.add("seed", "expected an unsigned integer");
    }
    cfg.mc_points = get_int(j, "", "mc_points", 1000, err);
    cfg.mc_trials = get_int(j, "", "mc_trials", 20, err);

    if (cfg.delta < 0) err.add("delta", "must be nonnegative");
    if (cfg.directions < 3) err.add("directions", "need at least 3 directions");
    if (cfg.slope_count < 2) err.add("slope_count", "need at least 2 slopes");
    if (cfg.truncation <= 0) err.add("truncation", "must be positive");
    if (cfg.abs_tol <= 0) err.add("abs_tol", "must be positive");
    if (cfg.rel_tol <= 0) err.add("rel_tol", "must be positive");
    if (cfg.tolerance <= 0) err.add("tolerance", "must be positive");
    if (cfg.mc_points < 3) err.add("mc_points", "need at least 3 sample points");
    if (cfg.mc_trials < 2) err.add("mc_trials", "need at least 2 trials");

    // cross-field requirements
    const std::string& e = cfg.experiment;
    auto need = [&](bool present, const char* field, const char* why) {
        if (!present) err.add(field, std::string("required for ") + why);
    };
    if (e == "float-body" || e == "randpoly") need(cfg.body.has_value(), "body", e.c_str());
    if (e == "float-func") need(cfg.function.has_value(), "function", e.c_str());
    if (e == "sconcave") need(cfg.sconcave.has_value(), "sconcave", e.c_str());
    if (e == "converge") {
        if (!kConvergeQuantities.count(cfg.quantity))
            err.add("quantity", "converge needs one of body, function, function_l1, sconcave");
        else if (cfg.quantity == "body")
            need(cfg.body.has_value(), "body", "converge/body");
        else if (cfg.quantity == "sconcave")
            need(cfg.sconcave.has_value(), "sconcave", "converge/sconcave");
        else
            need(cfg.function.has_value(), "function", "converge over functions");
    }
    if (e == "asa") {
        if (!kAsaQuantities.count(cfg.quantity)) {
            err.add("quantity", "asa needs a functional name");
        } else if (cfg.quantity == "body_p" || cfg.quantity == "gauge_identity") {
            need(cfg.body.has_value(), "body", "asa over bodies");
        } else if (cfg.quantity == "weighted" || cfg.quantity == "exponential" ||
                   cfg.quantity == "lambda") {
            need(cfg.function.has_value(), "function", "asa over convex functions");
        } else {
            need(cfg.sconcave.has_value(), "sconcave", "asa over s-concave functions");
        }
    }
    bool sconcave_experiment =
        e == "sconcave" || (e == "converge" && cfg.quantity == "sconcave") ||
        (e == "asa" && (cfg.quantity == "sconcave" || cfg.quantity == "profile_p" ||
                        cfg.quantity == "lambda_sconcave"));
    if (sconcave_experiment && cfg.weight.kind == "exponential_height")
        err.add("weight.kind", "weight kind incompatible with experiment");

    err.raise_if_any();
    return cfg;
}

std::string serialize(const ExperimentConfig& cfg) {
    json j;
    j["experiment"] = cfg.experiment;
    if (!cfg.quantity.empty()) j["quantity"] = cfg.quantity;
    if (cfg.body) {
        json b;
        b["shape"] = cfg.body->shape;
        if (!cfg.body->center.empty()) b["center"] = cfg.body->center;
        if (cfg.body->shape == "ball") b["radius"] = cfg.body->radius;
        if (!cfg.body->semi_axes.empty()) b["semi_axes"] = cfg.body->semi_axes;
        if (!cfg.body->vertices.empty()) b["vertices"] = cfg.body->vertices;
        j["body"] = std::move(b);
    }
    if (cfg.function) {
        json f;
        f["form"] = cfg.function->form;
        if (!cfg.function->diag.empty()) f["diag"] = cfg.function->diag;
        if (!cfg.function->slopes.empty()) {
            f["slopes"] = cfg.function->slopes;
            f["offsets"] = cfg.function->offsets;
        }
        j["function"] = std::move(f);
    }
    if (cfg.sconcave) {
        json s;
        s["n"] = cfg.sconcave->n;
        s["s"] = cfg.sconcave->s;
        s["height"] = cfg.sconcave->height;
        s["semi_axes"] = cfg.sconcave->semi_axes;
        j["sconcave"] = std::move(s);
    }
    j["weight"] = {{"kind", cfg.weight.kind}, {"value", cfg.weight.value}};
    j["sweep"] = {{"delta0", cfg.sweep.delta0}, {"q", cfg.sweep.q}, {"k", cfg.sweep.k}};
    j["delta"] = cfg.delta;
    j["directions"] = cfg.directions;
    j["slope_count"] = cfg.slope_count;
    j["truncation"] = cfg.truncation;
    j["abs_tol"] = cfg.abs_tol;
    j["rel_tol"] = cfg.rel_tol;
    j["p"] = cfg.p;
    j["lambda"] = cfg.lambda;
    j["tolerance"] = cfg.tolerance;
    if (cfg.target) j["target"] = *cfg.target;
    j["seed"] = cfg.seed;
    j["mc_points"] = cfg.mc_points;
    j["mc_trials"] = cfg.mc_trials;
    return j.dump(2) + "\n";
}

}  // namespace floatlab
