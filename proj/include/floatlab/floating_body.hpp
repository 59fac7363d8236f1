#pragma once

#include "floatlab/geometry.hpp"

namespace floatlab {

struct DirectionGrid {
    int dim = 0;
    std::vector<Vec> directions;

    // m equally spaced angles on the circle
    static DirectionGrid circle(int m);
    // m Fibonacci-lattice points on the 2-sphere
    static DirectionGrid sphere(int m);
    int count() const { return static_cast<int>(directions.size()); }
};

// Outer polytopal approximation of the weighted floating body: the grid picks
// finitely many halfspaces out of the defining intersection, so the result
// contains the true floating body and shrinks onto it as the grid refines.
struct FloatingBodyApprox {
    ConvexBody source;
    Weight weight;
    double delta = 0;
    std::vector<Vec> directions;
    std::vector<double> offsets;  // per-direction cut offsets a_delta(u)
    ConvexBody polytope;          // the intersection (delta = 0: the source itself)

    double volume(const QuadratureSpec& quad, double* std_err = nullptr) const;
};

// Offset a with cap mass exactly delta in direction u (bracketed root-find).
double cap_offset_for_mass(const ConvexBody& body, const Vec& u, const Weight& w, double delta,
                           const QuadratureSpec& quad);

FloatingBodyApprox weighted_floating_body(const ConvexBody& body, const Weight& w, double delta,
                                          const DirectionGrid& grid, const QuadratureSpec& quad);

Vec phi_barycenter(const ConvexBody& body, const Halfspace& cut, const Weight& w,
                   const QuadratureSpec& quad);

}  // namespace floatlab
