#include "floatlab/convex_function.hpp"

#include <cmath>

namespace floatlab {

double body_gauge(const ConvexBody& body, const Vec& x) {
    double r = norm(x);
    if (r == 0) return 0;
    switch (body.kind) {
        case ConvexBody::Kind::Ball: {
            if (norm(body.center) > 1e-12)
                throw NumericError("body_gauge: body must contain the origin as center");
            return r / body.radius;
        }
        case ConvexBody::Kind::Ellipsoid: {
            if (norm(body.center) > 1e-12)
                throw NumericError("body_gauge: body must contain the origin as center");
            Vec y = body.frame.apply(x);
            double s = 0;
            for (int i = 0; i < body.dim; ++i) {
                double t = y[i] / body.semi_axes[i];
                s += t * t;
            }
            return std::sqrt(s);
        }
        case ConvexBody::Kind::Gauge:
            return body.gauge(x);
        default: {
            // radial bisection along x from the origin
            Vec d = (1.0 / r) * x;
            double hi = body.bounding_box.diameter() + 1.0;
            if (membership(body, hi * d)) throw NumericError("body exceeds bounding box");
            double lo = 0;
            for (int it = 0; it < 60; ++it) {
                double mid = 0.5 * (lo + hi);
                if (membership(body, mid * d))
                    lo = mid;
                else
                    hi = mid;
            }
            return r / (0.5 * (lo + hi));
        }
    }
}

// ---------------------------------------------------------------------------

namespace {

const double kFdStep = std::cbrt(2.2e-16);

double fd_value_step(const Vec& x) { return kFdStep * std::max(1.0, norm(x)); }

}  // namespace

ConvexFunction ConvexFunction::quadratic(Mat A, Vec b, double c) {
    ConvexFunction f;
    f.dim = A.n;
    if (static_cast<int>(b.size()) != f.dim) throw NumericError("quadratic: dimension mismatch");
    f.kind = Kind::Quadratic;
    f.A = std::move(A);
    f.b = std::move(b);
    f.c = c;
    double lmin = min_symmetric_eigenvalue(f.A);
    if (lmin < -1e-10) throw NumericError("quadratic: matrix not positive semidefinite");
    if (lmin <= 1e-12)
        throw NumericError("quadratic: coercivity requires a positive definite matrix");
    // alpha*||x|| - beta lower bound: beta = (alpha+||b||)^2/(2 lmin) - c
    f.coer_alpha = 1.0;
    double nb = norm(f.b);
    f.coer_beta = (1.0 + nb) * (1.0 + nb) / (2 * lmin) - c;
    // minimizer solves A x = -b; use the convex search (small dims)
    auto val = [&f](const Vec& x) { return f(x); };
    auto grd = [&f](const Vec& x) { return f.gradient(x); };
    std::function<Vec(const Vec&)> g = grd;
    f.argmin = minimize_convex(val, &g, Vec(f.dim, 0.0), 1e-13);
    f.min_value = f(f.argmin);
    return f;
}

ConvexFunction ConvexFunction::gauge_square(const ConvexBody& body) {
    // origin-centered balls and ellipsoids reduce to exact quadratics
    if (body.kind == ConvexBody::Kind::Ball && norm(body.center) < 1e-12) {
        Mat A(body.dim);
        for (int i = 0; i < body.dim; ++i) A(i, i) = 1.0 / (body.radius * body.radius);
        ConvexFunction f = quadratic(A, Vec(body.dim, 0.0), 0.0);
        return f;
    }
    if (body.kind == ConvexBody::Kind::Ellipsoid && norm(body.center) < 1e-12) {
        // psi = |diag(1/a) R x|^2 / 2  ->  A = R^T diag(1/a^2) R
        int n = body.dim;
        Mat A(n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                double s = 0;
                for (int k = 0; k < n; ++k)
                    s += body.frame(k, i) * body.frame(k, j) /
                         (body.semi_axes[k] * body.semi_axes[k]);
                A(i, j) = s;
            }
        return quadratic(A, Vec(n, 0.0), 0.0);
    }
    ConvexFunction f;
    f.dim = body.dim;
    f.kind = Kind::GaugeSquare;
    ConvexBody K = body;
    f.value_fn = [K](const Vec& x) {
        double g = body_gauge(K, x);
        return 0.5 * g * g;
    };
    // gauge >= ||x|| / R with R the largest radial extent
    double R = 0;
    for (int i = 0; i < body.dim; ++i)
        R = std::max({R, std::abs(body.bounding_box.lo[i]), std::abs(body.bounding_box.hi[i])});
    R *= std::sqrt(static_cast<double>(body.dim));
    f.coer_alpha = 1.0;
    f.coer_beta = R * R / 2;
    f.argmin = Vec(f.dim, 0.0);
    f.min_value = 0.0;
    return f;
}

ConvexFunction ConvexFunction::piecewise_affine(int dim,
                                                std::vector<std::pair<Vec, double>> pieces) {
    if (pieces.empty()) throw NumericError("piecewise_affine: no pieces");
    ConvexFunction f;
    f.dim = dim;
    f.kind = Kind::PiecewiseAffine;
    f.pieces = std::move(pieces);
    // coercivity: alpha = min over sampled directions of the best slope growth
    std::vector<Vec> dirs;
    if (dim == 1) {
        dirs = {{1.0}, {-1.0}};
    } else if (dim == 2) {
        for (int i = 0; i < 64; ++i) {
            double th = 2 * M_PI * i / 64;
            dirs.push_back({std::cos(th), std::sin(th)});
        }
    } else {
        const double ga = M_PI * (3.0 - std::sqrt(5.0));
        for (int i = 0; i < 128; ++i) {
            double z = 1.0 - 2.0 * (i + 0.5) / 128;
            double r = std::sqrt(std::max(0.0, 1.0 - z * z));
            dirs.push_back({r * std::cos(ga * i), r * std::sin(ga * i), z});
        }
    }
    double alpha = std::numeric_limits<double>::infinity();
    for (const Vec& u : dirs) {
        double best = -std::numeric_limits<double>::infinity();
        for (const auto& [v, d] : f.pieces) best = std::max(best, dot(v, u));
        alpha = std::min(alpha, best);
    }
    if (!(alpha > 0)) throw NumericError("piecewise_affine: not coercive");
    f.coer_alpha = 0.9 * alpha;  // sampled directions only; keep a margin
    double dmax = 0;
    for (const auto& [v, d] : f.pieces) dmax = std::max(dmax, std::abs(d));
    f.coer_beta = dmax;
    auto val = [&f](const Vec& x) { return f(x); };
    f.argmin = minimize_convex(val, nullptr, Vec(dim, 0.0), 1e-12);
    f.min_value = f(f.argmin);
    return f;
}

ConvexFunction ConvexFunction::custom(int dim, std::function<double(const Vec&)> value,
                                      std::function<Vec(const Vec&)> grad,
                                      std::function<Mat(const Vec&)> hess, double alpha,
                                      double beta) {
    if (!(alpha > 0)) throw NumericError("custom convex function: coercivity alpha must be > 0");
    ConvexFunction f;
    f.dim = dim;
    f.kind = Kind::Custom;
    f.value_fn = std::move(value);
    f.grad_fn = std::move(grad);
    f.hess_fn = std::move(hess);
    f.coer_alpha = alpha;
    f.coer_beta = beta;
    auto val = [&f](const Vec& x) { return f(x); };
    if (f.grad_fn) {
        std::function<Vec(const Vec&)> g = [&f](const Vec& x) { return f.grad_fn(x); };
        f.argmin = minimize_convex(val, &g, Vec(dim, 0.0), 1e-12);
    } else {
        f.argmin = minimize_convex(val, nullptr, Vec(dim, 0.0), 1e-12);
    }
    f.min_value = f(f.argmin);
    return f;
}

double ConvexFunction::operator()(const Vec& x) const {
    switch (kind) {
        case Kind::Quadratic: {
            Vec Ax = A.apply(x);
            return 0.5 * dot(Ax, x) + dot(b, x) + c;
        }
        case Kind::PiecewiseAffine: {
            double best = -std::numeric_limits<double>::infinity();
            for (const auto& [v, d] : pieces) best = std::max(best, dot(v, x) + d);
            return best;
        }
        default:
            return value_fn(x);
    }
}

Vec ConvexFunction::gradient(const Vec& x) const {
    switch (kind) {
        case Kind::Quadratic:
            return A.apply(x) + b;
        case Kind::PiecewiseAffine: {
            double best = -std::numeric_limits<double>::infinity();
            const Vec* arg = nullptr;
            int ties = 0;
            for (const auto& [v, d] : pieces) {
                double t = dot(v, x) + d;
                if (t > best + 1e-12) {
                    best = t;
                    arg = &v;
                    ties = 1;
                } else if (t > best - 1e-12) {
                    ++ties;
                }
            }
            if (ties > 1) throw NumericError("gradient undefined at a kink");
            return *arg;
        }
        default: {
            if (grad_fn) return grad_fn(x);
            double h = fd_value_step(x);
            Vec g(dim);
            Vec xp = x, xm = x;
            for (int i = 0; i < dim; ++i) {
                xp[i] = x[i] + h;
                xm[i] = x[i] - h;
                g[i] = ((*this)(xp) - (*this)(xm)) / (2 * h);
                xp[i] = x[i];
                xm[i] = x[i];
            }
            return g;
        }
    }
}

Mat ConvexFunction::hessian(const Vec& x) const {
    switch (kind) {
        case Kind::Quadratic:
            return A;
        case Kind::PiecewiseAffine: {
            return Mat(dim);  // zero a.e.
        }
        default: {
            if (hess_fn) return hess_fn(x);
            double h = std::sqrt(kFdStep) * std::max(1.0, norm(x));
            Mat H(dim);
            double f0 = (*this)(x);
            for (int i = 0; i < dim; ++i) {
                for (int j = i; j < dim; ++j) {
                    Vec xa = x, xb = x, xc = x, xd = x;
                    if (i == j) {
                        xa[i] += h;
                        xb[i] -= h;
                        H(i, i) = ((*this)(xa) - 2 * f0 + (*this)(xb)) / (h * h);
                    } else {
                        xa[i] += h;
                        xa[j] += h;
                        xb[i] += h;
                        xb[j] -= h;
                        xc[i] -= h;
                        xc[j] += h;
                        xd[i] -= h;
                        xd[j] -= h;
                        H(i, j) = H(j, i) =
                            ((*this)(xa) - (*this)(xb) - (*this)(xc) + (*this)(xd)) /
                            (4 * h * h);
                    }
                }
            }
            return H;
        }
    }
}

Box ConvexFunction::truncation_box(double T) const {
    double R = (min_value + T + coer_beta) / coer_alpha;
    if (!(R > 0)) throw NumericError("truncation box: empty sublevel estimate");
    Box box;
    box.lo = Vec(dim, -R);
    box.hi = Vec(dim, R);
    return box;
}

bool ConvexFunction::isotropic_quadratic(double* a_out) const {
    if (kind != Kind::Quadratic) return false;
    if (norm(b) > 1e-12) return false;
    double d0 = A(0, 0);
    for (int i = 0; i < dim; ++i)
        for (int j = 0; j < dim; ++j) {
            double want = (i == j) ? d0 : 0.0;
            if (std::abs(A(i, j) - want) > 1e-12 * std::max(1.0, std::abs(d0))) return false;
        }
    if (a_out) *a_out = d0;
    return true;
}

void ConvexFunction::validate(std::uint64_t seed) const {
    if (dim < 1) throw NumericError("convex function: dimension must be >= 1");
    if (!(coer_alpha > 0)) throw NumericError("convex function: missing coercivity certificate");
    Box box = truncation_box(10.0);
    CounterRng rng{seed};
    for (int t = 0; t < 64; ++t) {
        Vec x(dim), y(dim);
        for (int i = 0; i < dim; ++i) {
            x[i] = rng.uniform(t, 2 * i, box.lo[i], box.hi[i]);
            y[i] = rng.uniform(t, 2 * i + 1, box.lo[i], box.hi[i]);
        }
        Vec m = 0.5 * (x + y);
        double lhs = (*this)(m);
        double rhs = 0.5 * ((*this)(x) + (*this)(y));
        double scale = std::max({1.0, std::abs(lhs), std::abs(rhs)});
        if (lhs > rhs + 1e-9 * scale)
            throw NumericError("convex function: midpoint convexity violated");
    }
}

}  // namespace floatlab
