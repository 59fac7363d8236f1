#pragma once

#include "floatlab/asa.hpp"
#include "floatlab/floating_body.hpp"
#include "floatlab/floating_function.hpp"
#include "floatlab/sconcave.hpp"

#include <string>

namespace floatlab {

struct SweepPoint {
    double delta = 0;
    double deficit = 0;
    double ratio = 0;  // deficit / delta^{2/(m+1)} with m the experiment exponent
};

struct FitResult {
    double limit = 0;
    double coeff = 0;
    double beta = 0;
    double residual = 0;
};

// Least-squares fit R = L + a delta^beta, beta searched over [0.1, 2];
// Richardson fallback from the last three points when the search is flat.
FitResult extrapolate(const std::vector<SweepPoint>& pts);

struct ConvergenceReport {
    std::string experiment;
    std::vector<SweepPoint> points;
    FitResult fit;
    double target = 0;
    double rel_error = 0;
    double tolerance = 0;
    bool pass = false;
};

ConvergenceReport theorem_verdict(std::string experiment, std::vector<SweepPoint> points,
                                  double target, double tolerance);

// Weighted-mass deficit of the floating body; ratio uses delta^{2/(n+1)}.
std::vector<SweepPoint> body_sweep(const ConvexBody& body, const Weight& w,
                                   const DirectionGrid& grid, double delta0, double q, int k,
                                   const QuadratureSpec& quad);

// Both limit-theorem integrands of the floating function in one pass;
// ratios use delta^{2/(n+2)}.
struct FunctionSweepPoint {
    double delta = 0;
    double integral_deficit = 0;  // \int e^{-psi} - e^{-psi_delta}
    double weighted_l1 = 0;       // \int (psi_delta - psi) e^{-psi}
};
std::vector<FunctionSweepPoint> function_sweep(const ConvexFunction& psi, const Weight& w,
                                               const SlopeGrid& grid, double delta0, double q,
                                               int k, const QuadratureSpec& quad);
std::vector<SweepPoint> function_points(const std::vector<FunctionSweepPoint>& pts, int n,
                                        bool weighted_l1);

// \int f - f_delta; ratio uses delta^{2/(n+s+1)}.
std::vector<SweepPoint> sconcave_sweep(const SConcaveFunction& f, const Weight& phi,
                                       const DirectionGrid& grid, double delta0, double q, int k,
                                       const QuadratureSpec& quad);

// Chord distance of the unit-disk floating body: segment area equals delta.
double disk_floating_radius(double delta, double radius = 1.0);

// Mean hull-volume deficit of N uniform points, scaled like the floating
// body: (vol K - E vol hull) / (vol K / N)^{2/(n+1)}. Returns the estimate
// and a normal-approximation 95% confidence half-width.
std::pair<double, double> random_polytope_deficit(const ConvexBody& body, int N, int trials,
                                                  std::uint64_t seed,
                                                  const QuadratureSpec& quad);

}  // namespace floatlab
