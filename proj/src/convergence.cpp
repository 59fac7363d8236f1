#include "floatlab/convergence.hpp"

#include <algorithm>
#include <cmath>

namespace floatlab {

namespace {

// least squares of R = L + a x with x = delta^beta; returns sum of squares
double lsq_at_beta(const std::vector<SweepPoint>& pts, double beta, double* L_out,
                   double* a_out) {
    double k = static_cast<double>(pts.size());
    double sx = 0, sxx = 0, sr = 0, sxr = 0;
    for (const SweepPoint& p : pts) {
        double x = std::pow(p.delta, beta);
        sx += x;
        sxx += x * x;
        sr += p.ratio;
        sxr += x * p.ratio;
    }
    double det = k * sxx - sx * sx;
    double L, a;
    if (std::abs(det) < 1e-300) {
        L = sr / k;
        a = 0;
    } else {
        L = (sxx * sr - sx * sxr) / det;
        a = (k * sxr - sx * sr) / det;
    }
    if (L_out) *L_out = L;
    if (a_out) *a_out = a;
    double sse = 0;
    for (const SweepPoint& p : pts) {
        double e = L + a * std::pow(p.delta, beta) - p.ratio;
        sse += e * e;
    }
    return sse;
}

// The polytopal floating body circumscribes the true one with an excess mass
// ~ 1/m^2 for m directions; keep that below a fraction of the delta^{2/(n+1)}
// deficit scale by refining the circle grid as delta shrinks.
DirectionGrid refined_grid(const DirectionGrid& grid, double delta) {
    if (grid.dim != 2) return grid;
    int m = static_cast<int>(std::ceil(50.0 / std::cbrt(delta)));
    return m > grid.count() ? DirectionGrid::circle(m) : grid;
}

}  // namespace

FitResult extrapolate(const std::vector<SweepPoint>& pts) {
    if (pts.empty()) throw NumericError("no data");
    if (pts.size() < 3) throw NumericError("extrapolation needs at least 3 points");

    double scale = 0;
    for (const SweepPoint& p : pts) scale = std::max(scale, std::abs(p.ratio));
    scale = std::max(scale, 1e-30);

    const double blo = 0.1, bhi = 2.0;
    const int nscan = 96;
    double best_beta = 1.0, best_sse = 1e300, worst_sse = 0;
    for (int i = 0; i <= nscan; ++i) {
        double b = blo + (bhi - blo) * i / nscan;
        double sse = lsq_at_beta(pts, b, nullptr, nullptr);
        worst_sse = std::max(worst_sse, sse);
        if (sse < best_sse) best_sse = sse, best_beta = b;
    }

    FitResult fit;
    if (worst_sse - best_sse < 1e-14 * scale * scale) {
        // flat search: Richardson step on the last three points
        size_t k = pts.size();
        double d1 = pts[k - 3].ratio - pts[k - 2].ratio;
        double d2 = pts[k - 2].ratio - pts[k - 1].ratio;
        double q = pts[k - 1].delta / pts[k - 2].delta;
        if (std::abs(d2) < 1e-13 * scale || d1 / d2 <= 1.0) {
            fit.limit = pts[k - 1].ratio;
            fit.beta = 1.0;
            return fit;
        }
        fit.beta = std::log(d1 / d2) / std::log(1.0 / q);
        double step = d2 * std::pow(q, fit.beta) / (1 - std::pow(q, fit.beta));
        fit.limit = pts[k - 1].ratio - step;
        fit.coeff = step / std::pow(pts[k - 1].delta, fit.beta);
        fit.residual = std::abs(d2);
        return fit;
    }

    double lo = std::max(blo, best_beta - (bhi - blo) / nscan);
    double hi = std::min(bhi, best_beta + (bhi - blo) / nscan);
    fit.beta = golden_max(
        [&](double b) { return -lsq_at_beta(pts, b, nullptr, nullptr); }, lo, hi, 1e-10);
    fit.residual =
        std::sqrt(lsq_at_beta(pts, fit.beta, &fit.limit, &fit.coeff) / pts.size());
    return fit;
}

ConvergenceReport theorem_verdict(std::string experiment, std::vector<SweepPoint> points,
                                  double target, double tolerance) {
    ConvergenceReport rep;
    rep.experiment = std::move(experiment);
    rep.points = std::move(points);
    rep.fit = extrapolate(rep.points);
    rep.target = target;
    rep.tolerance = tolerance;
    rep.rel_error = std::abs(rep.fit.limit - target) / std::abs(target);
    rep.pass = rep.rel_error <= tolerance;
    return rep;
}

std::vector<SweepPoint> body_sweep(const ConvexBody& body, const Weight& w,
                                   const DirectionGrid& grid, double delta0, double q, int k,
                                   const QuadratureSpec& quad) {
    if (delta0 <= 0 || q <= 0 || q >= 1 || k < 3) throw NumericError("bad sweep parameters");
    double massK = body_weighted_mass(body, w, quad);
    std::vector<SweepPoint> out;
    for (int i = 0; i < k; ++i) {
        double delta = delta0 * std::pow(q, i);
        FloatingBodyApprox fb = weighted_floating_body(body, w, delta, refined_grid(grid, delta), quad);
        double massF = body_weighted_mass(fb.polytope, w, quad);
        SweepPoint p;
        p.delta = delta;
        p.deficit = massK - massF;
        p.ratio = p.deficit / std::pow(delta, 2.0 / (body.dim + 1));
        out.push_back(p);
    }
    return out;
}

std::vector<FunctionSweepPoint> function_sweep(const ConvexFunction& psi, const Weight& w,
                                               const SlopeGrid& grid, double delta0, double q,
                                               int k, const QuadratureSpec& quad) {
    if (delta0 <= 0 || q <= 0 || q >= 1 || k < 3) throw NumericError("bad sweep parameters");
    std::vector<FunctionSweepPoint> out;
    for (int i = 0; i < k; ++i) {
        double delta = delta0 * std::pow(q, i);
        // radial grids are cheap to refine, and the max-affine envelope gap
        // ~ (r_max/count)^2/8 must stay below ~1% of the delta^{2/(n+2)}
        // deficit scale as delta shrinks
        SlopeGrid g = grid;
        if (grid.is_radial) {
            double rmax = norm(grid.slopes.back());
            int count = std::max<int>(static_cast<int>(grid.slopes.size()) - 1,
                                      static_cast<int>(std::ceil(rmax / (0.2 * std::cbrt(delta)))));
            g.slopes.clear();
            for (int j = 0; j <= count; ++j) {
                Vec v(static_cast<size_t>(grid.dim), 0.0);
                v[0] = rmax * j / count;
                g.slopes.push_back(v);
            }
        }
        FloatingFunction ff = floating_function(psi, w, delta, g, quad);
        auto [If, Ipsi] = deficit_integrals(psi, ff, quad);
        out.push_back({delta, If, Ipsi});
    }
    return out;
}

std::vector<SweepPoint> function_points(const std::vector<FunctionSweepPoint>& pts, int n,
                                        bool weighted_l1) {
    std::vector<SweepPoint> out;
    for (const FunctionSweepPoint& p : pts) {
        SweepPoint s;
        s.delta = p.delta;
        s.deficit = weighted_l1 ? p.weighted_l1 : p.integral_deficit;
        s.ratio = s.deficit / std::pow(p.delta, 2.0 / (n + 2));
        out.push_back(s);
    }
    return out;
}

std::vector<SweepPoint> sconcave_sweep(const SConcaveFunction& f, const Weight& phi,
                                       const DirectionGrid& grid, double delta0, double q, int k,
                                       const QuadratureSpec& quad) {
    if (delta0 <= 0 || q <= 0 || q >= 1 || k < 3) throw NumericError("bad sweep parameters");
    std::vector<SweepPoint> out;
    for (int i = 0; i < k; ++i) {
        double delta = delta0 * std::pow(q, i);
        SConcaveFloating fd =
            sconcave_floating_function(f, phi, delta, refined_grid(grid, delta), quad);
        SweepPoint p;
        p.delta = delta;
        p.deficit = sconcave_deficit(f, fd, quad);
        p.ratio = p.deficit / std::pow(delta, 2.0 / (f.n + f.s + 1));
        out.push_back(p);
    }
    return out;
}

double disk_floating_radius(double delta, double radius) {
    double r2 = radius * radius;
    if (delta <= 0) return radius;
    if (delta >= 0.5 * M_PI * r2) throw NumericError("delta too large");
    auto seg = [&](double d) {
        double u = d / radius;
        return r2 * (std::acos(u) - u * std::sqrt(1 - u * u)) - delta;
    };
    return brent_root(seg, 0.0, radius * (1 - 1e-15), 1e-14 * radius);
}

std::pair<double, double> random_polytope_deficit(const ConvexBody& body, int N, int trials,
                                                  std::uint64_t seed,
                                                  const QuadratureSpec& quad) {
    int n = body.dim;
    if (n != 2 && n != 3) throw NumericError("random polytopes supported in dimensions 2 and 3");
    if (N < n + 1) throw NumericError("need at least n+1 sample points");
    if (trials < 2) throw NumericError("need at least 2 trials");
    double volK = body_volume(body, quad);
    const Box& bb = body.bounding_box;
    CounterRng rng{seed};

    double sum = 0, sumsq = 0;
    double scale = std::pow(volK / N, 2.0 / (n + 1));
    for (int t = 0; t < trials; ++t) {
        double hull_vol = 0;
        std::uint64_t ctr = static_cast<std::uint64_t>(t) << 32;
        for (;;) {
            if (n == 2) {
                std::vector<std::array<double, 2>> pts;
                while (static_cast<int>(pts.size()) < N) {
                    Vec x = {rng.uniform(ctr, 0, bb.lo[0], bb.hi[0]),
                             rng.uniform(ctr, 1, bb.lo[1], bb.hi[1])};
                    ++ctr;
                    if (membership(body, x)) pts.push_back({x[0], x[1]});
                }
                Polygon h = convex_hull_2d(std::move(pts));
                if (h.size() < 3) continue;  // collinear sample: retry the trial
                hull_vol = polygon_area(h);
            } else {
                std::vector<std::array<double, 3>> pts;
                while (static_cast<int>(pts.size()) < N) {
                    Vec x = {rng.uniform(ctr, 0, bb.lo[0], bb.hi[0]),
                             rng.uniform(ctr, 1, bb.lo[1], bb.hi[1]),
                             rng.uniform(ctr, 2, bb.lo[2], bb.hi[2])};
                    ++ctr;
                    if (membership(body, x)) pts.push_back({x[0], x[1], x[2]});
                }
                Hull3 h = convex_hull_3d(pts);
                if (h.faces.empty()) continue;
                hull_vol = h.volume();
            }
            break;
        }
        double ratio = (volK - hull_vol) / scale;
        sum += ratio;
        sumsq += ratio * ratio;
    }
    double mean = sum / trials;
    double var = std::max(sumsq / trials - mean * mean, 0.0) * trials / (trials - 1);
    return {mean, 1.96 * std::sqrt(var / trials)};
}

}  // namespace floatlab
