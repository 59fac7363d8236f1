#pragma once

#include "floatlab/convex_function.hpp"
#include "floatlab/weights.hpp"

namespace floatlab {

// Slopes for the affine cuts, taken strictly inside the closure of the range
// of the gradient (slopes outside it give unbounded or unreachable cuts).
struct SlopeGrid {
    int dim = 0;
    std::vector<Vec> slopes;
    bool is_radial = false;  // slopes r*e_1; usable only for isotropic functions

    // Sample the gradient on a uniform grid over sample_box, shrink the hull of
    // the samples by `shrink` about its centroid, grid the result uniformly.
    static SlopeGrid build(const ConvexFunction& psi, const Box& sample_box, int per_axis,
                           double shrink = 0.95);
    // count radii uniform in (0, r_max] with r_max = shrink * max sampled |grad|
    static SlopeGrid radial(const ConvexFunction& psi, const Box& sample_box, int count,
                            double shrink = 0.95);
};

// Max-affine under-approximation of the weighted floating function: fewer cut
// halfspaces than the defining intersection means smaller values, increasing
// toward the true floating function as the slope grid refines.
struct FloatingFunction {
    ConvexFunction psi;
    Weight w;  // on the (dim+1)-dimensional epigraph space
    double delta = 0;
    std::vector<Vec> slopes;
    std::vector<double> offsets;  // c(v): pieces <v,x> - c(v)
    bool radial = false;          // offsets depend on |v| only; exact in angle

    double operator()(const Vec& x) const;
};

// Weighted mass of the epigraph cut {(x,y): psi(x) <= y <= <v,x> - c}.
double cut_mass(const ConvexFunction& psi, const Vec& v, double c, const Weight& w,
                const QuadratureSpec& quad);

double cut_offset_for_mass(const ConvexFunction& psi, const Vec& v, const Weight& w, double delta,
                           const QuadratureSpec& quad);

FloatingFunction floating_function(const ConvexFunction& psi, const Weight& w, double delta,
                                   const SlopeGrid& grid, const QuadratureSpec& quad);

// (I_f, I_psi) = (\int e^{-psi} - e^{-psi_delta}, \int (psi_delta - psi) e^{-psi})
std::pair<double, double> deficit_integrals(const ConvexFunction& psi,
                                            const FloatingFunction& approx,
                                            const QuadratureSpec& quad);

// Radius of the largest ball inside epi(psi) tangent at (x, psi(x)); 0 at kinks.
double rolling_function(const ConvexFunction& psi, const Vec& x, double search_tol = 1e-6);

// min(r_psi(x), |psi(x)|), the modified rolling function used with exponential
// weights.
double modified_rolling(const ConvexFunction& psi, const Vec& x);

}  // namespace floatlab
