#include "floatlab/sconcave.hpp"

#include <algorithm>
#include <cmath>

namespace floatlab {

namespace {

const double kFdStep = std::cbrt(2.2e-16);

// samples of g over the support: (point, value) pairs on a uniform grid
std::vector<std::pair<Vec, double>> sample_root(const SConcaveFunction& f, int per_axis) {
    const Box& bb = f.support.bounding_box;
    std::vector<std::pair<Vec, double>> out;
    if (f.n == 1) {
        for (int i = 0; i <= per_axis; ++i) {
            double x = bb.lo[0] + (bb.hi[0] - bb.lo[0]) * i / per_axis;
            if (membership(f.support, {x})) out.push_back({{x}, f.g({x})});
        }
    } else if (f.n == 2) {
        for (int i = 0; i <= per_axis; ++i)
            for (int j = 0; j <= per_axis; ++j) {
                Vec x = {bb.lo[0] + (bb.hi[0] - bb.lo[0]) * i / per_axis,
                         bb.lo[1] + (bb.hi[1] - bb.lo[1]) * j / per_axis};
                if (membership(f.support, x)) out.push_back({x, f.g(x)});
            }
    } else {
        throw NumericError("s-concave functions supported for n <= 2");
    }
    return out;
}

}  // namespace

double SConcaveFunction::root(const Vec& x) const {
    if (!membership(support, x)) return 0.0;
    return std::max(g(x), 0.0);
}

double SConcaveFunction::operator()(const Vec& x) const {
    double r = root(x);
    return s == 1 ? r : std::pow(r, s);
}

Vec SConcaveFunction::root_gradient(const Vec& x) const {
    if (grad_g) return grad_g(x);
    double h = kFdStep * std::max(1.0, norm(x));
    Vec out(n, 0.0);
    for (int i = 0; i < n; ++i) {
        Vec xp = x, xm = x;
        xp[i] += h;
        xm[i] -= h;
        out[i] = (g(xp) - g(xm)) / (2 * h);
    }
    return out;
}

Mat SConcaveFunction::root_hessian(const Vec& x) const {
    if (hess_g) return hess_g(x);
    double h = std::sqrt(kFdStep) * std::max(1.0, norm(x));
    Mat out(n);
    double f0 = g(x);
    for (int i = 0; i < n; ++i) {
        for (int j = i; j < n; ++j) {
            double v;
            if (i == j) {
                Vec xp = x, xm = x;
                xp[i] += h;
                xm[i] -= h;
                v = (g(xp) - 2 * f0 + g(xm)) / (h * h);
            } else {
                Vec pp = x, pm = x, mp = x, mm = x;
                pp[i] += h; pp[j] += h;
                pm[i] += h; pm[j] -= h;
                mp[i] -= h; mp[j] += h;
                mm[i] -= h; mm[j] -= h;
                v = (g(pp) - g(pm) - g(mp) + g(mm)) / (4 * h * h);
            }
            out(i, j) = out(j, i) = v;
        }
    }
    return out;
}

SConcaveFunction SConcaveFunction::from_concave(int n, int s, std::function<double(const Vec&)> g,
                                                ConvexBody support) {
    if (n < 1 || s < 1) throw NumericError("s-concave: need n >= 1 and integer s >= 1");
    if (support.dim != n) throw NumericError("s-concave: support dimension mismatch");
    support.validate();
    SConcaveFunction f;
    f.n = n;
    f.s = s;
    f.g = std::move(g);
    f.support = std::move(support);
    f.validate();
    return f;
}

void SConcaveFunction::validate() const {
    auto samples = sample_root(*this, n == 1 ? 256 : 48);
    double gmax = 0;
    for (const auto& [x, v] : samples) gmax = std::max(gmax, v);
    if (gmax <= 0) throw NumericError("s-concave: function vanishes on its support");
    // midpoint concavity of the root on random pairs of support samples
    CounterRng rng{20240917};
    int m = static_cast<int>(samples.size());
    for (int k = 0; k < 200; ++k) {
        const auto& [a, va] = samples[static_cast<size_t>(rng.uniform(k, 0, 0, m))];
        const auto& [b, vb] = samples[static_cast<size_t>(rng.uniform(k, 1, 0, m))];
        Vec mid = 0.5 * (a + b);
        if (!membership(support, mid)) continue;
        if (g(mid) < 0.5 * (va + vb) - 1e-9 * std::max(1.0, gmax))
            throw NumericError("s-concave: root fails midpoint concavity");
    }
}

ConvexBody lift_body(const SConcaveFunction& f) {
    auto samples = sample_root(f, f.n == 1 ? 512 : 64);
    double gmax = 0;
    Vec xbest;
    for (const auto& [x, v] : samples)
        if (v > gmax) gmax = v, xbest = x;
    if (gmax <= 0) throw NumericError("s-concave: function vanishes on its support");
    double ycap = 1.05 * gmax + 1e-9;

    const Box& sb = f.support.bounding_box;
    Box bb;
    bb.lo = sb.lo;
    bb.hi = sb.hi;
    for (int i = 0; i < f.s; ++i) {
        bb.lo.push_back(-ycap);
        bb.hi.push_back(ycap);
    }
    Vec inner = xbest;
    inner.resize(static_cast<size_t>(f.n + f.s), 0.0);

    int n = f.n, s = f.s;
    SConcaveFunction fc = f;  // capture by value: the body must own its oracle
    auto member = [fc, n, s](const Vec& z) {
        Vec x(z.begin(), z.begin() + n);
        double r2 = 0;
        for (int i = n; i < n + s; ++i) r2 += z[i] * z[i];
        double rho = fc.root(x);
        return membership(fc.support, x) && r2 <= rho * rho;
    };
    return ConvexBody::oracle_body(n + s, member, inner, bb);
}

double SConcaveFloating::slice_radius(const Vec& x) const {
    const ConvexBody& P = body.polytope;
    int n = f.n;
    Vec z(static_cast<size_t>(n + f.s), 0.0);
    std::copy(x.begin(), x.end(), z.begin());
    if (!membership(P, z, 1e-12)) return 0.0;
    double lo = 0.0, hi = P.bounding_box.hi[n] + 1e-9;
    for (int it = 0; it < 60; ++it) {
        double mid = 0.5 * (lo + hi);
        z[n] = mid;
        (membership(P, z, 1e-12) ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

double SConcaveFloating::operator()(const Vec& x) const {
    double rho = slice_radius(x);
    return f.s == 1 ? rho : std::pow(rho, f.s);
}

SConcaveFloating sconcave_floating_function(const SConcaveFunction& f, const Weight& phi,
                                            double delta, const DirectionGrid& grid,
                                            const QuadratureSpec& quad) {
    if (phi.ambient_dim != f.n + f.s)
        throw NumericError("s-concave: weight dimension must match the lifted space");
    // In the plane the lift is the region between the graphs of +-g; a fine
    // inscribed polygon makes the cap-mass root finds cheap (polygon clips
    // instead of membership bisections) at an area error far below the
    // smallest useful delta. delta = 0 keeps the exact oracle body.
    ConvexBody K;
    if (f.n + f.s == 2 && delta > 0) {
        const int m = 4096;
        double lo = f.support.bounding_box.lo[0], hi = f.support.bounding_box.hi[0];
        std::vector<Vec> verts;
        for (int i = 0; i <= m; ++i) {  // upper arc, right to left
            double x = hi - (hi - lo) * i / m;
            verts.push_back({x, std::max(f.g({x}), 0.0)});
        }
        for (int i = 1; i < m; ++i) {  // lower arc, left to right
            double x = lo + (hi - lo) * i / m;
            verts.push_back({x, -std::max(f.g({x}), 0.0)});
        }
        K = ConvexBody::vpolytope(2, std::move(verts));
    } else {
        K = lift_body(f);
    }
    SConcaveFloating out;
    out.f = f;
    out.body = weighted_floating_body(K, phi, delta, grid, quad);
    return out;
}

double sconcave_deficit(const SConcaveFunction& f, const SConcaveFloating& fd,
                        const QuadratureSpec& quad) {
    const Box& bb = f.support.bounding_box;
    auto d = [&](const Vec& x) { return std::max(f(x) - fd(x), 0.0); };
    if (f.n == 1)
        return integrate([&](double x) { return d({x}); }, bb.lo[0], bb.hi[0], quad.abs_tol,
                         quad.rel_tol);
    if (f.n == 2) {
        double w = bb.hi[1] - bb.lo[1];
        return integrate(
            [&](double x0) {
                return integrate([&](double x1) { return d({x0, x1}); }, bb.lo[1], bb.hi[1],
                                 quad.abs_tol / std::max(w, 1.0), quad.rel_tol);
            },
            bb.lo[0], bb.hi[0], quad.abs_tol, quad.rel_tol);
    }
    throw NumericError("s-concave functions supported for n <= 2");
}

}  // namespace floatlab
