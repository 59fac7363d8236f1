#pragma once

#include "floatlab/floating_body.hpp"

namespace floatlab {

// Nonnegative f with compact convex support whose s-th root g = f^{1/s} is
// concave on the support. Stored through g; f is max(g,0)^s, zero outside.
struct SConcaveFunction {
    int n = 0;
    int s = 1;
    std::function<double(const Vec&)> g;
    std::function<Vec(const Vec&)> grad_g;  // optional; finite differences otherwise
    std::function<Mat(const Vec&)> hess_g;  // optional
    ConvexBody support;

    double root(const Vec& x) const;        // max(g(x), 0), zero outside the support
    double operator()(const Vec& x) const;  // f = root^s
    Vec root_gradient(const Vec& x) const;
    Mat root_hessian(const Vec& x) const;

    static SConcaveFunction from_concave(int n, int s, std::function<double(const Vec&)> g,
                                         ConvexBody support);
    // midpoint-concavity spot checks on random pairs, positivity somewhere
    void validate() const;
};

// Revolution body {(x,y) in R^{n+s} : x in supp f, |y| <= f^{1/s}(x)}; its
// (n+s)-volume equals vol_s(B^s) * \int f.
ConvexBody lift_body(const SConcaveFunction& f);

// f_delta(x) = (slice radius of the lifted floating body at x)^s.
struct SConcaveFloating {
    SConcaveFunction f;
    FloatingBodyApprox body;

    double slice_radius(const Vec& x) const;  // along +e_{n+1}, by bisection
    double operator()(const Vec& x) const;
};

SConcaveFloating sconcave_floating_function(const SConcaveFunction& f, const Weight& phi,
                                            double delta, const DirectionGrid& grid,
                                            const QuadratureSpec& quad);

// \int_{supp f} (f - f_delta)
double sconcave_deficit(const SConcaveFunction& f, const SConcaveFloating& fd,
                        const QuadratureSpec& quad);

}  // namespace floatlab
