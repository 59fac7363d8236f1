#include "doctest.h"
#include "floatlab/config.hpp"
#include "floatlab/report.hpp"

#include <cmath>

using namespace floatlab;

TEST_SUITE_BEGIN("config_report");

namespace {
const char* kDiskConfig = R"({
  "experiment": "converge",
  "quantity": "body",
  "body": {"shape": "ball", "center": [0, 0], "radius": 1.0}
})";

ConvergenceReport disk_report() {
    std::vector<SweepPoint> pts;
    for (int i = 0; i < 5; ++i) {
        double d = 1e-2 * std::pow(0.25, i);
        double r = disk_floating_radius(d);
        double def = M_PI * (1 - r * r);
        pts.push_back({d, def, def / std::pow(d, 2.0 / 3)});
    }
    double target = 0.5 * std::pow(1.5, 2.0 / 3) * 2 * M_PI;
    return theorem_verdict("disk", std::move(pts), target, 0.01);
}
}  // namespace

TEST_CASE("minimal config parses with defaults") {
    ExperimentConfig cfg = parse_config(kDiskConfig);
    CHECK(cfg.experiment == "converge");
    CHECK(cfg.quantity == "body");
    REQUIRE(cfg.body.has_value());
    CHECK(cfg.body->shape == "ball");
    CHECK(cfg.body->radius == 1.0);
    CHECK(cfg.sweep.delta0 == 1e-2);
    CHECK(cfg.sweep.q == 0.25);
    CHECK(cfg.sweep.k == 5);
    CHECK(cfg.weight.kind == "constant");
    CHECK(cfg.directions == 2048);
    CHECK(cfg.tolerance == 0.02);
    CHECK(!cfg.target.has_value());
    ConvexBody disk = cfg.body->make();
    CHECK(disk.dim == 2);
}

TEST_CASE("field errors name the offending field") {
    std::string bad = R"({
      "experiment": "converge", "quantity": "body",
      "body": {"shape": "ball", "center": [0, 0]},
      "sweep": {"delta0": -1.0}
    })";
    try {
        parse_config(bad);
        FAIL("expected ConfigError");
    } catch (const ConfigError& e) {
        CHECK(std::string(e.what()).find("sweep.delta0") != std::string::npos);
    }

    // unknown keys are fatal
    CHECK_THROWS_AS(parse_config(R"({"experiment": "randpoly",
        "body": {"shape": "ball", "center": [0,0]}, "bogus": 1})"),
                    ConfigError);
    // several problems reported at once
    try {
        parse_config(R"({"experiment": "nope", "tolerance": -1})");
        FAIL("expected ConfigError");
    } catch (const ConfigError& e) {
        std::string msg = e.what();
        CHECK(msg.find("experiment") != std::string::npos);
        CHECK(msg.find("tolerance") != std::string::npos);
    }
    CHECK_THROWS_AS(parse_config("not json"), ConfigError);
}

TEST_CASE("weight compatibility with s-concave experiments") {
    std::string bad = R"({
      "experiment": "sconcave",
      "sconcave": {"n": 1, "s": 1, "semi_axes": [1.0]},
      "weight": {"kind": "exponential_height"}
    })";
    try {
        parse_config(bad);
        FAIL("expected ConfigError");
    } catch (const ConfigError& e) {
        CHECK(std::string(e.what()).find("weight kind incompatible with experiment") !=
              std::string::npos);
    }
}

TEST_CASE("specs build working objects") {
    ExperimentConfig cfg = parse_config(R"({
      "experiment": "converge", "quantity": "sconcave",
      "sconcave": {"n": 1, "s": 1, "height": 1.0, "semi_axes": [1.0]},
      "function": {"form": "quadratic", "diag": [1.0]},
      "body": {"shape": "ellipsoid", "semi_axes": [2.0, 1.0]}
    })");
    SConcaveFunction f = cfg.sconcave->make();
    CHECK(f({0.0}) == doctest::Approx(1.0));
    CHECK(f({0.5}) == doctest::Approx(0.75));
    ConvexFunction psi = cfg.function->make();
    CHECK(psi({2.0}) == doctest::Approx(2.0));
    ConvexBody ell = cfg.body->make();
    CHECK(ell.dim == 2);
    CHECK(membership(ell, {1.9, 0.0}));
    Weight w = cfg.weight.make(2);
    CHECK(weight_eval(w, {0.3, 0.7}) == 1.0);
}

TEST_CASE("serialize round-trips") {
    ExperimentConfig cfg = parse_config(kDiskConfig);
    CHECK(parse_config(serialize(cfg)) == cfg);

    cfg.target = 4.25;
    cfg.seed = 1234567890123ULL;
    cfg.sweep.delta0 = 3.7e-3;
    CHECK(parse_config(serialize(cfg)) == cfg);

    ExperimentConfig full = parse_config(R"({
      "experiment": "asa", "quantity": "body_p", "p": 0.75,
      "body": {"shape": "polytope", "vertices": [[-1,-1],[1,-1],[0,1]]},
      "function": {"form": "piecewise_affine", "slopes": [[1],[-1]], "offsets": [0, 0]},
      "weight": {"kind": "constant", "value": 4.0},
      "abs_tol": 1e-10, "seed": 9
    })");
    CHECK(parse_config(serialize(full)) == full);
    CHECK(serialize(parse_config(serialize(full))) == serialize(full));
}

TEST_CASE("csv rows and summary") {
    ConvergenceReport rep = disk_report();
    std::string csv = report_csv(rep);
    CHECK(csv.substr(0, 29) == "delta,deficit,ratio,ratio_err");
    size_t rows = 0;
    for (char c : csv)
        if (c == '\n') ++rows;
    CHECK(rows == 6);  // header + 5 sweep points
    CHECK(csv.find("0.01,") != std::string::npos);

    std::string js = report_json(rep);
    CHECK(js.find("\"target\": 4.11665") != std::string::npos);
    CHECK(js.find("\"pass\": true") != std::string::npos);

    // determinism: identical inputs give identical bytes
    CHECK(report_csv(disk_report()) == csv);
    CHECK(report_json(disk_report()) == js);

    ConvergenceReport empty;
    CHECK_THROWS_WITH(report_csv(empty), "no data");
    CHECK_THROWS_WITH(report_json(empty), "no data");
    CHECK_THROWS_WITH(report_svg(empty), "no data");
}

TEST_CASE("svg plot structure") {
    ConvergenceReport rep = disk_report();
    std::string svg = report_svg(rep);
    CHECK(svg.find("<svg") == 0);
    CHECK(svg.find("</svg>") != std::string::npos);
    CHECK(svg.find("polyline") != std::string::npos);
    CHECK(svg.find("target") != std::string::npos);
    size_t circles = 0, pos = 0;
    while ((pos = svg.find("<circle", pos)) != std::string::npos) ++circles, ++pos;
    CHECK(circles == 5);
    CHECK(report_svg(disk_report()) == svg);
}

TEST_CASE("emit_report writes the requested files") {
    ConvergenceReport rep = disk_report();
    emit_report(rep, "/tmp", "floatlab_report_test", {"csv", "json", "svg"});
    // re-read and compare with the in-memory renderings
    auto slurp = [](const std::string& p) {
        FILE* f = fopen(p.c_str(), "rb");
        REQUIRE(f);
        std::string s;
        char buf[4096];
        size_t k;
        while ((k = fread(buf, 1, sizeof buf, f)) > 0) s.append(buf, k);
        fclose(f);
        return s;
    };
    CHECK(slurp("/tmp/floatlab_report_test.csv") == report_csv(rep));
    CHECK(slurp("/tmp/floatlab_report_test.json") == report_json(rep));
    CHECK(slurp("/tmp/floatlab_report_test.svg") == report_svg(rep));
    CHECK_THROWS(emit_report(rep, "/nonexistent_dir_zz", "x", {"csv"}));
    CHECK_THROWS(emit_report(rep, "/tmp", "x", {"pdf"}));
}

TEST_SUITE_END();
