#pragma once

#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

namespace floatlab {

using Vec = std::vector<double>;

struct NumericError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

double dot(const Vec& a, const Vec& b);
double norm(const Vec& a);
Vec normalized(const Vec& a);
Vec operator+(const Vec& a, const Vec& b);
Vec operator-(const Vec& a, const Vec& b);
Vec operator*(double s, const Vec& a);

// Dense square matrix, row-major.
struct Mat {
    int n = 0;
    std::vector<double> a;

    Mat() = default;
    explicit Mat(int n_) : n(n_), a(static_cast<size_t>(n_) * n_, 0.0) {}
    static Mat identity(int n);
    double& operator()(int i, int j) { return a[static_cast<size_t>(i) * n + j]; }
    double operator()(int i, int j) const { return a[static_cast<size_t>(i) * n + j]; }
    Vec apply(const Vec& x) const;
    Vec apply_transposed(const Vec& x) const;
};

double determinant(const Mat& m);
// Smallest eigenvalue of a symmetric matrix (cyclic Jacobi).
double min_symmetric_eigenvalue(const Mat& m);

struct Box {
    Vec lo, hi;
    int dim() const { return static_cast<int>(lo.size()); }
    Vec center() const;
    bool contains(const Vec& x) const;
    double diameter() const;
};

// vol_n of the Euclidean unit ball, surface area of S^{n-1}.
double unit_ball_volume(int n);
double unit_sphere_area(int n);

// ---------------------------------------------------------------------------
// Quadrature

struct QuadratureSpec {
    enum class Method { ExactClosedForm, TensorGrid, MonteCarlo };
    Method method = Method::TensorGrid;
    int points_per_axis = 64;
    std::int64_t samples = 200000;
    std::uint64_t seed = 0;
    double abs_tol = 1e-8;
    double rel_tol = 1e-6;

    void validate() const;
    QuadratureSpec with_tols(double abs, double rel) const;
};

// Adaptive 1-D quadrature (Gauss-Lobatto kernel, Gander-Gautschi style).
double integrate(const std::function<double(double)>& f, double a, double b,
                 double abs_tol = 1e-10, double rel_tol = 1e-9);

// Fixed-order Gauss-Legendre on [a,b]; order in {8, 16, 32}.
double gauss_legendre(const std::function<double(double)>& f, double a, double b, int order);

// ---------------------------------------------------------------------------
// Root finding / optimization

// Root of a continuous f with f(a), f(b) of opposite sign (Brent).
double brent_root(const std::function<double(double)>& f, double a, double b,
                  double xtol = 1e-12, int max_iter = 200);

// Maximum of a unimodal function on [a,b] (golden section).
double golden_max(const std::function<double(double)>& f, double a, double b,
                  double xtol = 1e-10);

// Unconstrained minimizer of a smooth convex function; Newton when a Hessian
// is supplied, compass search otherwise.
Vec minimize_convex(const std::function<double(const Vec&)>& f,
                    const std::function<Vec(const Vec&)>* grad,
                    Vec start, double tol = 1e-11, int max_iter = 400);

// ---------------------------------------------------------------------------
// Deterministic counter-based randomness (reproducible under any scheduling).

std::uint64_t splitmix64(std::uint64_t x);

struct CounterRng {
    std::uint64_t seed = 0;
    // i-th uniform in [0,1); stream is a pure function of (seed, i).
    double uniform(std::uint64_t i) const;
    // uniform in [lo,hi) with a distinct substream per (i, slot)
    double uniform(std::uint64_t i, std::uint64_t slot, double lo, double hi) const;
};

}  // namespace floatlab
