#pragma once

#include "floatlab/convergence.hpp"

#include <optional>
#include <string>

namespace floatlab {

// Bad or inconsistent configuration input; distinct from NumericError so the
// CLI can map it to its own exit code.
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct BodySpec {
    std::string shape = "ball";  // ball | ellipsoid | polytope
    Vec center;
    double radius = 1.0;
    Vec semi_axes;
    std::vector<Vec> vertices;

    int dim() const;
    ConvexBody make() const;
    bool operator==(const BodySpec&) const = default;
};

struct FunctionSpec {
    std::string form = "quadratic";  // quadratic | piecewise_affine
    Vec diag;                        // quadratic: psi = sum diag_i x_i^2 / 2
    std::vector<Vec> slopes;         // piecewise affine: max <slope_j, x> + offset_j
    Vec offsets;

    int dim() const;
    ConvexFunction make() const;
    bool operator==(const FunctionSpec&) const = default;
};

// parabolic cap f(x)^{1/s} = height * (1 - sum (x_i / semi_axes_i)^2)
struct SconcaveSpec {
    int n = 1;
    int s = 1;
    double height = 1.0;
    Vec semi_axes;

    SConcaveFunction make() const;
    bool operator==(const SconcaveSpec&) const = default;
};

struct WeightSpec {
    std::string kind = "constant";  // constant | exponential_height
    double value = 1.0;

    Weight make(int ambient_dim) const;
    bool operator==(const WeightSpec&) const = default;
};

struct SweepSpec {
    double delta0 = 1e-2;
    double q = 0.25;
    int k = 5;
    bool operator==(const SweepSpec&) const = default;
};

struct ExperimentConfig {
    std::string experiment;  // float-body | float-func | sconcave | asa | converge | randpoly
    std::string quantity;    // converge: body|function|function_l1|sconcave
                             // asa: body_p|profile_p|weighted|exponential|lambda|sconcave|
                             //      lambda_sconcave|gauge_identity
    std::optional<BodySpec> body;
    std::optional<FunctionSpec> function;
    std::optional<SconcaveSpec> sconcave;
    WeightSpec weight;
    SweepSpec sweep;
    double delta = 1e-2;  // single-delta experiments
    int directions = 2048;
    int slope_count = 300;
    double truncation = 30.0;
    double abs_tol = 1e-9;
    double rel_tol = 1e-8;
    double p = 1.0;
    double lambda = 0.0;
    double tolerance = 0.02;
    std::optional<double> target;  // converge: override for the auto-computed limit
    std::uint64_t seed = 0;
    int mc_points = 1000;
    int mc_trials = 20;

    QuadratureSpec quadrature() const;
    bool operator==(const ExperimentConfig&) const = default;
};

// Strict parse: unknown keys are fatal; all field errors are reported at once,
// one per line, each naming the offending field.
ExperimentConfig parse_config(const std::string& text);

std::string serialize(const ExperimentConfig& cfg);

}  // namespace floatlab
