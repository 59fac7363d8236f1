#include "floatlab/floating_function.hpp"

#include <algorithm>
#include <cmath>

namespace floatlab {

namespace {

// maximizer of <v,x> - psi(x) and the conjugate value psi*(v)
struct CutGeom {
    Vec xstar;
    double conj;
};

CutGeom cut_geometry(const ConvexFunction& psi, const Vec& v) {
    CutGeom g;
    if (psi.kind == ConvexFunction::Kind::Quadratic) {
        // solve A x = v - b
        Vec rhs = v - psi.b;
        if (psi.dim == 1) {
            g.xstar = {rhs[0] / psi.A(0, 0)};
        } else if (psi.dim == 2) {
            double det = psi.A(0, 0) * psi.A(1, 1) - psi.A(0, 1) * psi.A(1, 0);
            g.xstar = {(psi.A(1, 1) * rhs[0] - psi.A(0, 1) * rhs[1]) / det,
                       (psi.A(0, 0) * rhs[1] - psi.A(1, 0) * rhs[0]) / det};
        } else {
            auto f = [&](const Vec& x) { return psi(x) - dot(v, x); };
            g.xstar = minimize_convex(f, nullptr, psi.argmin, 1e-12);
        }
    } else {
        auto f = [&](const Vec& x) { return psi(x) - dot(v, x); };
        if (psi.kind == ConvexFunction::Kind::PiecewiseAffine) {
            g.xstar = minimize_convex(f, nullptr, psi.argmin, 1e-12);
        } else {
            std::function<Vec(const Vec&)> grad = [&](const Vec& x) {
                return psi.gradient(x) - v;
            };
            g.xstar = minimize_convex(f, &grad, psi.argmin, 1e-12);
        }
    }
    g.conj = dot(v, g.xstar) - psi(g.xstar);
    return g;
}

// \int_lo^hi Phi(x, y) dy
double inner_mass(const Weight& w, const Vec& x, double lo, double hi) {
    if (hi <= lo) return 0;
    switch (w.kind) {
        case Weight::Kind::Constant:
            return w.eta * (hi - lo);
        case Weight::Kind::ExpHeight:
            return exp_height_segment_mass(lo, hi);
        default: {
            auto f = [&](double y) {
                Vec z = x;
                z.push_back(y);
                return weight_eval(w, z);
            };
            return gauss_legendre(f, lo, hi, 16);
        }
    }
}

// Distance along direction d from xstar to the zero of the concave excess.
// Exponential-height cuts may be unbounded; they are truncated at `limit`
// because the remaining inner mass is exponentially negligible there.
double excess_root(const std::function<double(const Vec&)>& excess, const Vec& xstar,
                   const Vec& d, double estar, double limit, bool truncatable) {
    double t = std::max(1e-3, 1e-2 * norm(xstar));
    double prev = 0;
    while (excess(xstar + t * d) > 0) {
        prev = t;
        t *= 2;
        if (t > limit) {
            if (truncatable) return limit;
            throw NumericError("infinite cut mass");
        }
    }
    auto g = [&](double s) { return excess(xstar + s * d); };
    return brent_root(g, prev, t, 1e-12 * std::max(1.0, t));
}

// Adaptive integration over panels refined geometrically toward both
// endpoints and the peak abscissa. For exponential-height weights the
// integrand can be a spike much narrower than the cut interval (a steep cut
// plane grazing the bulk of the mass far from its tangent point) and vanishes
// at both interval endpoints, which defeats a single adaptive pass.
double integrate_peaked(const std::function<double(double)>& f, double a, double b, double peak,
                        double abs_tol, double rel_tol) {
    double L = b - a;
    if (L <= 0) return 0;
    std::vector<double> bp = {a, b};
    auto ladder = [&](double from, double dir) {
        for (double w = L / 2; w > 1e-7 * L; w /= 2) {
            double x = from + dir * w;
            if (x > a && x < b) bp.push_back(x);
        }
    };
    ladder(a, 1);
    ladder(b, -1);
    if (peak > a && peak < b) {
        bp.push_back(peak);
        ladder(peak, 1);
        ladder(peak, -1);
    }
    std::sort(bp.begin(), bp.end());
    double acc = 0;
    double tol = abs_tol / static_cast<double>(bp.size());
    for (size_t i = 0; i + 1 < bp.size(); ++i)
        if (bp[i + 1] > bp[i]) acc += integrate(f, bp[i], bp[i + 1], tol, rel_tol);
    return acc;
}

}  // namespace

double cut_mass(const ConvexFunction& psi, const Vec& v, double c, const Weight& w,
                const QuadratureSpec& quad) {
    if (w.ambient_dim != psi.dim + 1)
        throw NumericError("cut_mass: weight must live on the epigraph space");
    int n = psi.dim;
    if (n > 2) throw NumericError("cut_mass: dims 1-2 only");
    CutGeom geom = cut_geometry(psi, v);
    double estar = geom.conj - c;
    if (estar <= 0) return 0;

    auto ell = [&](const Vec& x) { return dot(v, x) - c; };
    auto excess = [&](const Vec& x) { return ell(x) - psi(x); };
    double limit = 8.0 * psi.truncation_box(60.0).hi[0];
    bool truncatable = w.kind == Weight::Kind::ExpHeight;

    if (n == 1) {
        double tr = excess_root(excess, geom.xstar, {1.0}, estar, limit, truncatable);
        double tl = excess_root(excess, geom.xstar, {-1.0}, estar, limit, truncatable);
        double x0 = geom.xstar[0];
        auto f = [&](double x) {
            Vec p = {x};
            return inner_mass(w, p, psi(p), ell(p));
        };
        if (w.kind == Weight::Kind::ExpHeight)
            return integrate_peaked(f, x0 - tl, x0 + tr, psi.argmin[0], quad.abs_tol,
                                    quad.rel_tol);
        return integrate(f, x0 - tl, x0 + tr, quad.abs_tol, quad.rel_tol);
    }

    // n = 2: polar integration about the excess maximizer
    int nth = std::max(48, quad.points_per_axis);
    double acc = 0;
    for (int j = 0; j < nth; ++j) {
        double th = 2 * M_PI * j / nth;
        Vec d = {std::cos(th), std::sin(th)};
        double rho = excess_root(excess, geom.xstar, d, estar, limit, truncatable);
        auto f = [&](double r) {
            Vec p = geom.xstar + r * d;
            return inner_mass(w, p, psi(p), ell(p)) * r;
        };
        if (w.kind == Weight::Kind::ExpHeight) {
            double tpk = std::clamp(dot(psi.argmin - geom.xstar, d), 0.0, rho);
            acc += integrate_peaked(f, 0, rho, tpk, quad.abs_tol * 2 * M_PI / nth, quad.rel_tol);
        } else {
            acc += gauss_legendre(f, 0, rho, 32);
        }
    }
    return acc * 2 * M_PI / nth;
}

double cut_offset_for_mass(const ConvexFunction& psi, const Vec& v, const Weight& w, double delta,
                           const QuadratureSpec& quad) {
    if (!(delta > 0)) throw NumericError("cut_offset_for_mass: delta must be positive");
    CutGeom geom = cut_geometry(psi, v);
    double c_hi = geom.conj;  // tangent offset: zero mass
    QuadratureSpec q = quad.with_tols(std::min(quad.abs_tol, 1e-3 * delta), quad.rel_tol);
    auto G = [&](double c) { return cut_mass(psi, v, c, w, q); };
    double t = 1e-3 * std::max(1.0, std::abs(c_hi));
    int it = 0;
    while (G(c_hi - t) < delta) {
        t *= 2;
        if (++it > 80) throw NumericError("delta unreachable for slope");
    }
    auto g = [&](double c) { return G(c) - delta; };
    return brent_root(g, c_hi - t, c_hi, 1e-12 * std::max(1.0, std::abs(c_hi) + t));
}

// ---------------------------------------------------------------------------

SlopeGrid SlopeGrid::build(const ConvexFunction& psi, const Box& sample_box, int per_axis,
                           double shrink) {
    if (per_axis < 2) throw NumericError("slope grid: need at least 2 points per axis");
    int n = psi.dim;
    if (n > 2) throw NumericError("slope grid: dims 1-2 only");
    SlopeGrid g;
    g.dim = n;

    // gradient samples over the box (kinks skipped)
    std::vector<Vec> grads;
    int samples = n == 1 ? 256 : 48;
    auto sample_at = [&](const Vec& x) {
        try {
            grads.push_back(psi.gradient(x));
        } catch (const NumericError&) {
        }
    };
    if (n == 1) {
        for (int i = 0; i < samples; ++i) {
            double x = sample_box.lo[0] +
                       (sample_box.hi[0] - sample_box.lo[0]) * (i + 0.5) / samples;
            sample_at({x});
        }
    } else {
        for (int i = 0; i < samples; ++i)
            for (int j = 0; j < samples; ++j)
                sample_at({sample_box.lo[0] +
                               (sample_box.hi[0] - sample_box.lo[0]) * (i + 0.5) / samples,
                           sample_box.lo[1] +
                               (sample_box.hi[1] - sample_box.lo[1]) * (j + 0.5) / samples});
    }
    if (grads.empty()) throw NumericError("slope grid: no usable gradients");

    if (n == 1) {
        double lo = grads[0][0], hi = grads[0][0];
        for (const Vec& v : grads) {
            lo = std::min(lo, v[0]);
            hi = std::max(hi, v[0]);
        }
        double mid = 0.5 * (lo + hi), half = 0.5 * (hi - lo) * shrink;
        for (int i = 0; i < per_axis; ++i) {
            double v = mid - half + 2 * half * i / (per_axis - 1.0);
            g.slopes.push_back({v});
        }
        return g;
    }

    // 2-D: shrink the hull of the gradient samples about its centroid, then
    // keep the lattice points that fall inside
    std::vector<std::array<double, 2>> pts;
    Vec cen(2, 0.0);
    for (const Vec& v : grads) {
        pts.push_back({v[0], v[1]});
        cen = cen + (1.0 / grads.size()) * v;
    }
    Polygon hull = convex_hull_2d(pts);
    Polygon shrunk;
    for (const auto& p : hull)
        shrunk.push_back({cen[0] + shrink * (p[0] - cen[0]), cen[1] + shrink * (p[1] - cen[1])});
    double lox = shrunk[0][0], hix = lox, loy = shrunk[0][1], hiy = loy;
    for (const auto& p : shrunk) {
        lox = std::min(lox, p[0]);
        hix = std::max(hix, p[0]);
        loy = std::min(loy, p[1]);
        hiy = std::max(hiy, p[1]);
    }
    for (int i = 0; i < per_axis; ++i)
        for (int j = 0; j < per_axis; ++j) {
            double x = lox + (hix - lox) * (i + 0.5) / per_axis;
            double y = loy + (hiy - loy) * (j + 0.5) / per_axis;
            if (polygon_contains(shrunk, {x, y}, 1e-12)) g.slopes.push_back({x, y});
        }
    if (g.slopes.empty()) throw NumericError("slope grid: empty after shrinking");
    return g;
}

SlopeGrid SlopeGrid::radial(const ConvexFunction& psi, const Box& sample_box, int count,
                            double shrink) {
    if (count < 2) throw NumericError("slope grid: need at least 2 radii");
    int n = psi.dim;
    SlopeGrid g;
    g.dim = n;
    g.is_radial = true;
    double rmax = 0;
    int samples = 512;
    for (int i = 0; i < samples; ++i) {
        double x = sample_box.lo[0] + (sample_box.hi[0] - sample_box.lo[0]) * (i + 0.5) / samples;
        Vec p(n, 0.0);
        p[0] = x;
        try {
            rmax = std::max(rmax, norm(psi.gradient(p)));
        } catch (const NumericError&) {
        }
    }
    if (!(rmax > 0)) throw NumericError("slope grid: no usable gradients");
    rmax *= shrink;
    // slope 0 included so the envelope is exact at the minimizer
    for (int k = 0; k <= count; ++k) {
        Vec v(n, 0.0);
        v[0] = rmax * k / count;
        g.slopes.push_back(v);
    }
    return g;
}

FloatingFunction floating_function(const ConvexFunction& psi, const Weight& w, double delta,
                                   const SlopeGrid& grid, const QuadratureSpec& quad) {
    if (grid.dim != psi.dim) throw NumericError("slope grid dimension mismatch");
    if (delta < 0) throw NumericError("delta must be nonnegative");
    if (w.ambient_dim != psi.dim + 1)
        throw NumericError("floating function: weight must live on the epigraph space");
    FloatingFunction ff;
    ff.psi = psi;
    ff.w = w;
    ff.delta = delta;
    if (delta == 0) return ff;  // psi_0 = psi

    ff.radial = grid.is_radial;
    if (grid.is_radial) {
        bool invariant_weight =
            w.kind == Weight::Kind::Constant || w.kind == Weight::Kind::ExpHeight;
        if (!psi.isotropic_quadratic() || !invariant_weight)
            throw NumericError(
                "radial slope grid requires an isotropic function and a height-only weight");
    }
    ff.slopes = grid.slopes;
    ff.offsets.reserve(grid.slopes.size());
    for (const Vec& v : grid.slopes)
        ff.offsets.push_back(cut_offset_for_mass(psi, v, w, delta, quad));
    return ff;
}

double FloatingFunction::operator()(const Vec& x) const {
    double best = psi(x);
    if (radial) {
        double r = norm(x);
        for (size_t k = 0; k < slopes.size(); ++k)
            best = std::max(best, slopes[k][0] * r - offsets[k]);
        return best;
    }
    for (size_t k = 0; k < slopes.size(); ++k)
        best = std::max(best, dot(slopes[k], x) - offsets[k]);
    return best;
}

std::pair<double, double> deficit_integrals(const ConvexFunction& psi,
                                            const FloatingFunction& approx,
                                            const QuadratureSpec& quad) {
    Box box = psi.truncation_box(40.0);
    int n = psi.dim;
    auto point_terms = [&](const Vec& x, double& df, double& dpsi) {
        double p = psi(x);
        double pd = approx(x);
        double e = std::exp(-p);
        df = e - std::exp(-pd);
        dpsi = (pd - p) * e;
    };
    if (n == 1) {
        double If = integrate(
            [&](double x) {
                double a, b;
                point_terms({x}, a, b);
                return a;
            },
            box.lo[0], box.hi[0], quad.abs_tol, quad.rel_tol);
        double Ipsi = integrate(
            [&](double x) {
                double a, b;
                point_terms({x}, a, b);
                return b;
            },
            box.lo[0], box.hi[0], quad.abs_tol, quad.rel_tol);
        return {If, Ipsi};
    }
    if (n == 2 && approx.radial) {
        // everything depends on |x| only
        double If = 2 * M_PI *
                    integrate(
                        [&](double r) {
                            double a, b;
                            point_terms({r, 0.0}, a, b);
                            return a * r;
                        },
                        0, box.hi[0] * std::sqrt(2.0), quad.abs_tol, quad.rel_tol);
        double Ipsi = 2 * M_PI *
                      integrate(
                          [&](double r) {
                              double a, b;
                              point_terms({r, 0.0}, a, b);
                              return b * r;
                          },
                          0, box.hi[0] * std::sqrt(2.0), quad.abs_tol, quad.rel_tol);
        return {If, Ipsi};
    }
    if (n == 2) {
        double w0 = box.hi[0] - box.lo[0];
        auto outer = [&](int which) {
            return integrate(
                [&](double x1) {
                    return integrate(
                        [&](double x2) {
                            double a, b;
                            point_terms({x1, x2}, a, b);
                            return which == 0 ? a : b;
                        },
                        box.lo[1], box.hi[1], quad.abs_tol / w0, quad.rel_tol);
                },
                box.lo[0], box.hi[0], quad.abs_tol, quad.rel_tol);
        };
        return {outer(0), outer(1)};
    }
    throw NumericError("deficit_integrals: dims 1-2 only");
}

// ---------------------------------------------------------------------------

double rolling_function(const ConvexFunction& psi, const Vec& x, double search_tol) {
    Vec g;
    try {
        g = psi.gradient(x);
    } catch (const NumericError&) {
        return 0.0;  // nonunique normal
    }
    int n = psi.dim;
    double s = std::sqrt(1.0 + dot(g, g));
    double px = psi(x);

    // ball of radius rho tangent from inside at (x, psi(x))
    auto contained = [&](double rho) {
        Vec cx = x - (rho / s) * g;
        double cy = px + rho / s;
        // min over the shadow of (lower ball boundary - psi)
        auto margin_at = [&](const Vec& u) {
            double d2 = 0;
            for (int i = 0; i < n; ++i) d2 += (u[i] - cx[i]) * (u[i] - cx[i]);
            if (d2 >= rho * rho) return std::numeric_limits<double>::infinity();
            return cy - std::sqrt(rho * rho - d2) - psi(u);
        };
        double worst = std::numeric_limits<double>::infinity();
        Vec worst_u = cx;
        if (n == 1) {
            const int m = 512;
            for (int i = 0; i <= m; ++i) {
                Vec u = {cx[0] - rho + 2.0 * rho * i / m};
                double mg = margin_at(u);
                if (mg < worst) {
                    worst = mg;
                    worst_u = u;
                }
            }
            double lo = worst_u[0] - 2 * rho / 512, hi = worst_u[0] + 2 * rho / 512;
            double u = golden_max([&](double t) { return -margin_at({t}); }, lo, hi, 1e-12);
            worst = std::min(worst, margin_at({u}));
        } else {
            const int mr = 48, mt = 64;
            for (int i = 1; i <= mr; ++i)
                for (int j = 0; j < mt; ++j) {
                    double r = rho * (i - 0.5) / mr;
                    double th = 2 * M_PI * j / mt;
                    Vec u = cx;
                    u[0] += r * std::cos(th);
                    u[1] += r * std::sin(th);
                    double mg = margin_at(u);
                    if (mg < worst) {
                        worst = mg;
                        worst_u = u;
                    }
                }
            Vec u = minimize_convex([&](const Vec& p) { return margin_at(p); }, nullptr,
                                    worst_u, 1e-12, 200);
            worst = std::min(worst, margin_at(u));
        }
        return worst >= -1e-10 * std::max(1.0, rho);
    };

    if (!contained(search_tol)) return 0.0;
    double lo = search_tol, hi = 2 * search_tol;
    int grow = 0;
    while (contained(hi)) {
        lo = hi;
        hi *= 2;
        if (++grow > 40) return hi;  // effectively unbounded
    }
    while (hi - lo > search_tol) {
        double mid = 0.5 * (lo + hi);
        if (contained(mid))
            lo = mid;
        else
            hi = mid;
    }
    return lo;
}

double modified_rolling(const ConvexFunction& psi, const Vec& x) {
    double r = rolling_function(psi, x);
    return std::min(r, std::abs(psi(x)));
}

}  // namespace floatlab
