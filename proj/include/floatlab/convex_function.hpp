#pragma once

#include "floatlab/geometry.hpp"

namespace floatlab {

// Minkowski functional of a body with the origin in its interior.
double body_gauge(const ConvexBody& body, const Vec& x);

// A convex function with enough structure for epigraph cuts: value, gradient
// and Hessian oracles (finite differences as fallback) and a coercivity
// certificate psi(x) >= alpha*||x|| - beta used to truncate improper integrals.
struct ConvexFunction {
    enum class Kind { Quadratic, GaugeSquare, PiecewiseAffine, Custom };

    int dim = 0;
    Kind kind = Kind::Quadratic;

    Mat A;  // quadratic: psi = <Ax,x>/2 + <b,x> + c
    Vec b;
    double c = 0;
    std::vector<std::pair<Vec, double>> pieces;  // piecewise affine: max <v,x> + d
    std::function<double(const Vec&)> value_fn;
    std::function<Vec(const Vec&)> grad_fn;
    std::function<Mat(const Vec&)> hess_fn;

    double coer_alpha = 0;  // psi(x) >= alpha*||x|| - beta
    double coer_beta = 0;
    double min_value = 0;
    Vec argmin;

    static ConvexFunction quadratic(Mat A, Vec b, double c);
    static ConvexFunction gauge_square(const ConvexBody& body);
    static ConvexFunction piecewise_affine(int dim, std::vector<std::pair<Vec, double>> pieces);
    static ConvexFunction custom(int dim, std::function<double(const Vec&)> value,
                                 std::function<Vec(const Vec&)> grad,
                                 std::function<Mat(const Vec&)> hess, double alpha, double beta);

    double operator()(const Vec& x) const;
    // Throws on a detectable kink (tied affine pieces).
    Vec gradient(const Vec& x) const;
    Mat hessian(const Vec& x) const;

    // Box containing {psi <= min psi + T}, from the coercivity certificate.
    Box truncation_box(double T = 40.0) const;

    // A = a*I, b = 0 up to round-off; enables rotational fast paths.
    bool isotropic_quadratic(double* a_out = nullptr) const;

    // midpoint-convexity spot check, PSD check, coercivity sanity
    void validate(std::uint64_t seed = 1) const;
};

}  // namespace floatlab
