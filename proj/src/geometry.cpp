#include "floatlab/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace floatlab {

Halfspace::Halfspace(Vec u, double a) {
    double nu = norm(u);
    if (!(nu > 0)) throw NumericError("halfspace: zero normal");
    normal = (1.0 / nu) * u;
    offset = a / nu;
}

// ---------------------------------------------------------------------------
// construction

namespace {

Box bbox_of_points(const std::vector<Vec>& pts) {
    Box b;
    b.lo = pts.front();
    b.hi = pts.front();
    for (const Vec& p : pts)
        for (size_t i = 0; i < p.size(); ++i) {
            b.lo[i] = std::min(b.lo[i], p[i]);
            b.hi[i] = std::max(b.hi[i], p[i]);
        }
    return b;
}

Vec centroid(const std::vector<Vec>& pts) {
    Vec c(pts.front().size(), 0.0);
    for (const Vec& p : pts)
        for (size_t i = 0; i < c.size(); ++i) c[i] += p[i] / pts.size();
    return c;
}

double body_scale(const ConvexBody& b) { return std::max(1.0, b.bounding_box.diameter()); }

// facet halfspaces of a vertex-represented polytope
std::vector<Halfspace> vpoly_facets(int dim, const std::vector<Vec>& verts) {
    std::vector<Halfspace> hs;
    if (dim == 1) {
        double lo = verts[0][0], hi = verts[0][0];
        for (const Vec& v : verts) {
            lo = std::min(lo, v[0]);
            hi = std::max(hi, v[0]);
        }
        hs.push_back(Halfspace({1.0}, hi));
        hs.push_back(Halfspace({-1.0}, -lo));
    } else if (dim == 2) {
        size_t n = verts.size();
        for (size_t i = 0; i < n; ++i) {
            const Vec& a = verts[i];
            const Vec& b = verts[(i + 1) % n];
            Vec u = {b[1] - a[1], a[0] - b[0]};  // outward for CCW order
            if (norm(u) < 1e-14) continue;
            hs.push_back(Halfspace(u, u[0] * a[0] + u[1] * a[1]));
        }
    } else {
        std::vector<std::array<double, 3>> pts;
        for (const Vec& v : verts) pts.push_back({v[0], v[1], v[2]});
        Hull3 h = convex_hull_3d(pts);
        for (const auto& f : h.faces) {
            const auto &a = h.vertices[f[0]], &b = h.vertices[f[1]], &c = h.vertices[f[2]];
            Vec u = {(b[1] - a[1]) * (c[2] - a[2]) - (b[2] - a[2]) * (c[1] - a[1]),
                     (b[2] - a[2]) * (c[0] - a[0]) - (b[0] - a[0]) * (c[2] - a[2]),
                     (b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0])};
            if (norm(u) < 1e-14) continue;
            hs.push_back(Halfspace(u, u[0] * a[0] + u[1] * a[1] + u[2] * a[2]));
        }
    }
    return hs;
}

}  // namespace

ConvexBody ConvexBody::ball(Vec center, double radius) {
    if (!(radius > 0)) throw NumericError("ball: radius must be positive");
    ConvexBody b;
    b.dim = static_cast<int>(center.size());
    b.kind = Kind::Ball;
    b.center = std::move(center);
    b.radius = radius;
    b.bounding_box.lo = b.center;
    b.bounding_box.hi = b.center;
    for (int i = 0; i < b.dim; ++i) {
        b.bounding_box.lo[i] -= radius;
        b.bounding_box.hi[i] += radius;
    }
    return b;
}

ConvexBody ConvexBody::ellipsoid(Vec center, Vec semi_axes) {
    int d = static_cast<int>(center.size());
    return ellipsoid(std::move(center), std::move(semi_axes), Mat::identity(d));
}

ConvexBody ConvexBody::ellipsoid(Vec center, Vec semi_axes, Mat frame) {
    ConvexBody b;
    b.dim = static_cast<int>(center.size());
    if (static_cast<int>(semi_axes.size()) != b.dim || frame.n != b.dim)
        throw NumericError("ellipsoid: dimension mismatch");
    for (double a : semi_axes)
        if (!(a > 0)) throw NumericError("ellipsoid: semi-axes must be positive");
    b.kind = Kind::Ellipsoid;
    b.center = std::move(center);
    b.semi_axes = std::move(semi_axes);
    b.frame = std::move(frame);
    b.bounding_box.lo = b.center;
    b.bounding_box.hi = b.center;
    for (int j = 0; j < b.dim; ++j) {
        // extent of coordinate j: || diag(a) R e_j ||
        double s = 0;
        for (int i = 0; i < b.dim; ++i) {
            double t = b.semi_axes[i] * b.frame(i, j);
            s += t * t;
        }
        s = std::sqrt(s);
        b.bounding_box.lo[j] -= s;
        b.bounding_box.hi[j] += s;
    }
    return b;
}

ConvexBody ConvexBody::vpolytope(int dim, std::vector<Vec> verts) {
    if (dim < 1 || dim > 3) throw NumericError("vpolytope: dims 1-3 only");
    if (verts.size() < static_cast<size_t>(dim + 1))
        throw NumericError("vpolytope: too few vertices");
    ConvexBody b;
    b.dim = dim;
    b.kind = Kind::VPolytope;
    if (dim == 2) {
        std::vector<std::array<double, 2>> pts;
        for (const Vec& v : verts) pts.push_back({v[0], v[1]});
        Polygon h = convex_hull_2d(pts);
        if (h.size() < 3) throw NumericError("vpolytope: degenerate polygon");
        for (const auto& p : h) b.vertices.push_back({p[0], p[1]});
    } else if (dim == 3) {
        std::vector<std::array<double, 3>> pts;
        for (const Vec& v : verts) pts.push_back({v[0], v[1], v[2]});
        Hull3 h = convex_hull_3d(pts);
        for (const auto& p : h.vertices) b.vertices.push_back({p[0], p[1], p[2]});
    } else {
        b.vertices = std::move(verts);
    }
    b.halfspaces = vpoly_facets(dim, b.vertices);
    b.bounding_box = bbox_of_points(b.vertices);
    b.interior = centroid(b.vertices);
    return b;
}

ConvexBody ConvexBody::hpolytope(int dim, std::vector<Halfspace> hs, Box bbox) {
    if (dim < 1 || dim > 3) throw NumericError("hpolytope: dims 1-3 only");
    if (bbox.dim() != dim) throw NumericError("hpolytope: bbox dimension mismatch");
    if (dim == 1) {
        double lo = bbox.lo[0], hi = bbox.hi[0];
        for (const Halfspace& h : hs) {
            if (h.normal[0] > 0)
                hi = std::min(hi, h.offset);
            else
                lo = std::max(lo, -h.offset);
        }
        if (!(lo < hi)) throw NumericError("hpolytope: empty interior");
        ConvexBody b = vpolytope(1, {{lo}, {hi}});
        b.kind = Kind::HPolytope;
        return b;
    }
    // Clip against a slightly inflated box so that genuine containment in the
    // declared box can be checked afterwards.
    Box big = bbox;
    double pad = 0.05 * std::max(1.0, bbox.diameter());
    for (int i = 0; i < dim; ++i) {
        big.lo[i] -= pad;
        big.hi[i] += pad;
    }
    ConvexBody clipped = halfspace_intersection(hs, dim, big);
    double tol = 1e-9 * std::max(1.0, bbox.diameter());
    for (const Vec& v : clipped.vertices)
        for (int i = 0; i < dim; ++i)
            if (v[i] < bbox.lo[i] - tol || v[i] > bbox.hi[i] + tol)
                throw NumericError("hpolytope: not contained in declared bounding box");
    clipped.kind = Kind::HPolytope;
    clipped.halfspaces = hs;  // keep the user facets for membership
    return clipped;
}

ConvexBody ConvexBody::gauge_body(int dim, std::function<double(const Vec&)> gauge, Box bbox) {
    if (bbox.dim() != dim) throw NumericError("gauge body: bbox dimension mismatch");
    ConvexBody b;
    b.dim = dim;
    b.kind = Kind::Gauge;
    b.gauge = std::move(gauge);
    b.bounding_box = std::move(bbox);
    b.interior = Vec(dim, 0.0);
    if (!b.bounding_box.contains(b.interior))
        throw NumericError("gauge body: bounding box must contain the origin");
    return b;
}

ConvexBody ConvexBody::oracle_body(int dim, std::function<bool(const Vec&)> member, Vec interior,
                                   Box bbox) {
    if (bbox.dim() != dim || static_cast<int>(interior.size()) != dim)
        throw NumericError("oracle body: dimension mismatch");
    ConvexBody b;
    b.dim = dim;
    b.kind = Kind::Oracle;
    b.member_oracle = std::move(member);
    b.interior = std::move(interior);
    b.bounding_box = std::move(bbox);
    if (!b.member_oracle(b.interior))
        throw NumericError("oracle body: declared interior point is not a member");
    return b;
}

void ConvexBody::validate() const {
    if (dim < 1) throw NumericError("body: dimension must be >= 1");
    if (kind == Kind::Gauge && !gauge) throw NumericError("body: missing gauge");
    if (kind == Kind::Oracle && !member_oracle) throw NumericError("body: missing oracle");
}

// ---------------------------------------------------------------------------
// support / membership

namespace {

// radial extent from an interior point along unit direction d
double radial_extent(const ConvexBody& b, const Vec& p, const Vec& d) {
    if (b.kind == ConvexBody::Kind::Gauge) {
        // interior is the origin; gauge is positively homogeneous
        double g = b.gauge(d);
        if (!(g > 0)) throw NumericError("gauge body: gauge not positive");
        return 1.0 / g;
    }
    double hi = b.bounding_box.diameter();
    double lo = 0;
    if (membership(b, p + hi * d)) throw NumericError("body exceeds bounding box");
    for (int it = 0; it < 60; ++it) {
        double mid = 0.5 * (lo + hi);
        if (membership(b, p + mid * d))
            lo = mid;
        else
            hi = mid;
    }
    return 0.5 * (lo + hi);
}

Vec rotate90(const Vec& u) { return {-u[1], u[0]}; }

// support over the boundary seen from the interior point, 2-D: the objective
// t -> <b(t), u> is unimodal on the circle for a convex body.
std::pair<double, Vec> support_scan_2d(const ConvexBody& b, const Vec& u) {
    Vec p = interior_point(b);
    auto bpt = [&](double th) -> Vec {
        Vec d = {std::cos(th), std::sin(th)};
        return p + radial_extent(b, p, d) * d;
    };
    auto val = [&](double th) { return dot(bpt(th), u); };
    const int m = 128;
    double best_th = 0, best = -std::numeric_limits<double>::infinity();
    for (int i = 0; i < m; ++i) {
        double th = 2 * M_PI * i / m;
        double v = val(th);
        if (v > best) {
            best = v;
            best_th = th;
        }
    }
    double w = 2 * M_PI / m;
    double th = golden_max(val, best_th - 1.5 * w, best_th + 1.5 * w, 1e-12);
    return {val(th), bpt(th)};
}

std::pair<double, Vec> support_scan_3d(const ConvexBody& b, const Vec& u) {
    Vec p = interior_point(b);
    auto bpt = [&](const Vec& d) -> Vec { return p + radial_extent(b, p, d) * d; };
    // coarse Fibonacci sweep
    const int m = 512;
    Vec best_d;
    double best = -std::numeric_limits<double>::infinity();
    const double ga = M_PI * (3.0 - std::sqrt(5.0));
    for (int i = 0; i < m; ++i) {
        double z = 1.0 - 2.0 * (i + 0.5) / m;
        double r = std::sqrt(std::max(0.0, 1.0 - z * z));
        double th = ga * i;
        Vec d = {r * std::cos(th), r * std::sin(th), z};
        double v = dot(bpt(d), u);
        if (v > best) {
            best = v;
            best_d = d;
        }
    }
    // refine in tangent coordinates
    Vec e1 = (std::abs(best_d[0]) < 0.9) ? Vec{1, 0, 0} : Vec{0, 1, 0};
    e1 = normalized(e1 - dot(e1, best_d) * best_d);
    Vec e2 = {best_d[1] * e1[2] - best_d[2] * e1[1], best_d[2] * e1[0] - best_d[0] * e1[2],
              best_d[0] * e1[1] - best_d[1] * e1[0]};
    auto neg = [&](const Vec& t) {
        Vec d = normalized(best_d + t[0] * e1 + t[1] * e2);
        return -dot(bpt(d), u);
    };
    Vec t = minimize_convex(neg, nullptr, {0.0, 0.0}, 1e-10, 200);
    Vec d = normalized(best_d + t[0] * e1 + t[1] * e2);
    return {dot(bpt(d), u), bpt(d)};
}

}  // namespace

double support_value(const ConvexBody& b, const Vec& u) {
    switch (b.kind) {
        case ConvexBody::Kind::Ball:
            return dot(b.center, u) + b.radius * norm(u);
        case ConvexBody::Kind::Ellipsoid: {
            Vec w = b.frame.apply(u);
            for (int i = 0; i < b.dim; ++i) w[i] *= b.semi_axes[i];
            return dot(b.center, u) + norm(w);
        }
        case ConvexBody::Kind::HPolytope:
        case ConvexBody::Kind::VPolytope: {
            double best = -std::numeric_limits<double>::infinity();
            for (const Vec& v : b.vertices) best = std::max(best, dot(v, u));
            return best;
        }
        default: {
            Vec un = normalized(u);
            double nu = norm(u);
            if (b.dim == 1) {
                Vec p = interior_point(b);
                return nu * (dot(p, un) + radial_extent(b, p, un));
            }
            if (b.dim == 2) return nu * support_scan_2d(b, un).first;
            if (b.dim == 3) return nu * support_scan_3d(b, un).first;
            throw NumericError("support_value: unsupported dimension for oracle body");
        }
    }
}

Vec support_point(const ConvexBody& b, const Vec& u) {
    switch (b.kind) {
        case ConvexBody::Kind::Ball:
            return b.center + b.radius * normalized(u);
        case ConvexBody::Kind::Ellipsoid: {
            Vec w = b.frame.apply(u);
            for (int i = 0; i < b.dim; ++i) w[i] *= b.semi_axes[i];
            w = normalized(w);
            for (int i = 0; i < b.dim; ++i) w[i] *= b.semi_axes[i];
            return b.center + b.frame.apply_transposed(w);
        }
        case ConvexBody::Kind::HPolytope:
        case ConvexBody::Kind::VPolytope: {
            double best = -std::numeric_limits<double>::infinity();
            const Vec* arg = nullptr;
            for (const Vec& v : b.vertices) {
                double d = dot(v, u);
                if (d > best) {
                    best = d;
                    arg = &v;
                }
            }
            return *arg;
        }
        default: {
            Vec un = normalized(u);
            if (b.dim == 1) {
                Vec p = interior_point(b);
                return p + radial_extent(b, p, un) * un;
            }
            if (b.dim == 2) return support_scan_2d(b, un).second;
            if (b.dim == 3) return support_scan_3d(b, un).second;
            throw NumericError("support_point: unsupported dimension for oracle body");
        }
    }
}

bool membership(const ConvexBody& b, const Vec& x, double tol) {
    switch (b.kind) {
        case ConvexBody::Kind::Ball:
            return norm(x - b.center) <= b.radius * (1 + tol) + tol;
        case ConvexBody::Kind::Ellipsoid: {
            Vec y = b.frame.apply(x - b.center);
            double s = 0;
            for (int i = 0; i < b.dim; ++i) {
                double t = y[i] / b.semi_axes[i];
                s += t * t;
            }
            return s <= 1 + 2 * tol;
        }
        case ConvexBody::Kind::HPolytope:
        case ConvexBody::Kind::VPolytope: {
            double sc = std::max(1.0, b.bounding_box.diameter());
            for (const Halfspace& h : b.halfspaces)
                if (dot(x, h.normal) > h.offset + tol * sc) return false;
            return true;
        }
        case ConvexBody::Kind::Gauge:
            return b.gauge(x) <= 1 + tol;
        case ConvexBody::Kind::Oracle:
            return b.member_oracle(x);
    }
    return false;
}

Vec interior_point(const ConvexBody& b) {
    switch (b.kind) {
        case ConvexBody::Kind::Ball:
        case ConvexBody::Kind::Ellipsoid:
            return b.center;
        case ConvexBody::Kind::HPolytope:
        case ConvexBody::Kind::VPolytope:
            return centroid(b.vertices);
        default:
            return b.interior;
    }
}

// ---------------------------------------------------------------------------
// volume

namespace {

double mc_indicator_integral(const ConvexBody& b,
                             const std::function<double(const Vec&)>& f,
                             const QuadratureSpec& quad, double* std_err) {
    const Box& box = b.bounding_box;
    double boxvol = 1;
    for (int i = 0; i < b.dim; ++i) boxvol *= box.hi[i] - box.lo[i];
    CounterRng rng{quad.seed};
    double sum = 0, sum2 = 0;
    std::int64_t n = std::max<std::int64_t>(quad.samples, 1000);
    Vec x(b.dim);
    for (std::int64_t i = 0; i < n; ++i) {
        for (int k = 0; k < b.dim; ++k)
            x[k] = rng.uniform(static_cast<std::uint64_t>(i), static_cast<std::uint64_t>(k),
                               box.lo[k], box.hi[k]);
        double v = f(x);
        sum += v;
        sum2 += v * v;
    }
    double mean = sum / n;
    double var = std::max(0.0, sum2 / n - mean * mean);
    if (std_err) *std_err = boxvol * std::sqrt(var / n);
    return boxvol * mean;
}

}  // namespace

double body_volume(const ConvexBody& b, const QuadratureSpec& quad, double* std_err) {
    quad.validate();
    if (std_err) *std_err = 0;
    if (quad.method == QuadratureSpec::Method::MonteCarlo)
        return mc_indicator_integral(
            b, [&](const Vec& x) { return membership(b, x) ? 1.0 : 0.0; }, quad, std_err);

    switch (b.kind) {
        case ConvexBody::Kind::Ball:
            return unit_ball_volume(b.dim) * std::pow(b.radius, b.dim);
        case ConvexBody::Kind::Ellipsoid: {
            double v = unit_ball_volume(b.dim);
            for (double a : b.semi_axes) v *= a;
            return v;
        }
        case ConvexBody::Kind::HPolytope:
        case ConvexBody::Kind::VPolytope: {
            if (b.dim == 1) {
                double lo = b.vertices[0][0], hi = lo;
                for (const Vec& v : b.vertices) {
                    lo = std::min(lo, v[0]);
                    hi = std::max(hi, v[0]);
                }
                return hi - lo;
            }
            if (b.dim == 2) {
                Polygon p;
                for (const Vec& v : b.vertices) p.push_back({v[0], v[1]});
                return polygon_area(p);
            }
            std::vector<std::array<double, 3>> pts;
            for (const Vec& v : b.vertices) pts.push_back({v[0], v[1], v[2]});
            return convex_hull_3d(pts).volume();
        }
        default: {
            Vec p = interior_point(b);
            if (b.dim == 1) return radial_extent(b, p, {1.0}) + radial_extent(b, p, {-1.0});
            if (b.dim == 2) {
                auto f = [&](double th) {
                    Vec d = {std::cos(th), std::sin(th)};
                    double r = radial_extent(b, p, d);
                    return 0.5 * r * r;
                };
                return integrate(f, 0, 2 * M_PI, quad.abs_tol, quad.rel_tol);
            }
            if (b.dim == 3) {
                // spherical coordinates, Gauss-Legendre in the polar angle
                int nphi = std::max(32, quad.points_per_axis);
                auto f = [&](double th) {
                    double s = 0;
                    for (int j = 0; j < nphi; ++j) {
                        double ph = 2 * M_PI * j / nphi;
                        Vec d = {std::sin(th) * std::cos(ph), std::sin(th) * std::sin(ph),
                                 std::cos(th)};
                        double r = radial_extent(b, p, d);
                        s += r * r * r;
                    }
                    return (s / nphi) * std::sin(th) * (2 * M_PI) / 3.0;
                };
                return gauss_legendre(f, 0, M_PI, 32);
            }
            throw NumericError("body_volume: unsupported dimension; use Monte Carlo");
        }
    }
}

// ---------------------------------------------------------------------------
// weighted cap masses

namespace {

double unit_ball_cap_volume(int n, double t) {  // cap {x_n >= t} of B^n
    if (t >= 1) return 0;
    if (t <= -1) return unit_ball_volume(n);
    switch (n) {
        case 1:
            return 1 - t;
        case 2:
            return std::acos(t) - t * std::sqrt(1 - t * t);
        case 3:
            return M_PI * (1 - t) * (1 - t) * (2 + t) / 3.0;
        default:
            throw NumericError("unit_ball_cap_volume: dims 1-3 only");
    }
}

struct CapFrame {
    Vec u;        // unit cut normal
    double a;     // cut offset
    double hi;    // support in direction u
    double lo;    // -support in direction -u
    Vec x0;       // interior point
    double t0;    // <x0, u>
    Vec q_hi;     // support point in direction u
    Vec q_lo;     // support point in direction -u
};

// interior point of the level slice {<x,u> = t} of the body
Vec slice_point(const CapFrame& fr, double t) {
    if (t >= fr.t0) {
        double d = fr.hi - fr.t0;
        double lam = d > 0 ? (t - fr.t0) / d : 0.0;
        lam = std::min(lam, 1.0);
        return fr.x0 + lam * (fr.q_hi - fr.x0);
    }
    double d = fr.t0 - fr.lo;
    double lam = d > 0 ? (fr.t0 - t) / d : 0.0;
    lam = std::min(lam, 1.0);
    return fr.x0 + lam * (fr.q_lo - fr.x0);
}

// extent of the body from p along unit direction w (p inside or on boundary)
double chord_extent(const ConvexBody& b, const Vec& p, const Vec& w) {
    double hi = b.bounding_box.diameter() + 1e-12;
    double lo = 0;
    if (membership(b, p + hi * w)) throw NumericError("body exceeds bounding box");
    if (!membership(b, p, 1e-7)) return 0;
    for (int it = 0; it < 60; ++it) {
        double mid = 0.5 * (lo + hi);
        if (membership(b, p + mid * w))
            lo = mid;
        else
            hi = mid;
    }
    return 0.5 * (lo + hi);
}

// \int over the slice at level t of f (f == nullptr means f == 1)
double slice_integral(const ConvexBody& b, const CapFrame& fr, double t,
                      const std::function<double(const Vec&)>* f, int points) {
    Vec p = slice_point(fr, t);
    if (b.dim == 2) {
        Vec w = rotate90(fr.u);
        double sp = chord_extent(b, p, w);
        Vec mw = -1.0 * w;
        double sm = chord_extent(b, p, mw);
        if (!f) return sp + sm;
        auto g = [&](double s) { return (*f)(p + s * w); };
        return gauss_legendre(g, -sm, sp, 32);
    }
    // dim 3: polar integration in the slice plane
    Vec e1 = (std::abs(fr.u[0]) < 0.9) ? Vec{1, 0, 0} : Vec{0, 1, 0};
    e1 = normalized(e1 - dot(e1, fr.u) * fr.u);
    Vec e2 = {fr.u[1] * e1[2] - fr.u[2] * e1[1], fr.u[2] * e1[0] - fr.u[0] * e1[2],
              fr.u[0] * e1[1] - fr.u[1] * e1[0]};
    int nth = std::max(32, points);
    double acc = 0;
    for (int j = 0; j < nth; ++j) {
        double th = 2 * M_PI * j / nth;
        Vec w = std::cos(th) * e1 + std::sin(th) * e2;
        double rho = chord_extent(b, p, w);
        if (!f) {
            acc += 0.5 * rho * rho;
        } else {
            auto g = [&](double r) { return (*f)(p + r * w) * r; };
            acc += gauss_legendre(g, 0, rho, 16);
        }
    }
    return acc * 2 * M_PI / nth;
}

// generic level-slice evaluation of \int_{K ∩ {<x,u> >= a}} f
double cap_integral_levels(const ConvexBody& b, const CapFrame& fr,
                           const std::function<double(const Vec&)>* f,
                           const QuadratureSpec& quad) {
    double a_eff = std::max(fr.a, fr.lo);
    if (a_eff >= fr.hi) return 0;
    double span = fr.hi - fr.lo;
    auto slice = [&](double t) { return slice_integral(b, fr, t, f, quad.points_per_axis); };

    // substitution t = hi - s^2 tames the square-root vanishing at the top
    auto upper_part = [&](double lo_t) {
        double smax = std::sqrt(fr.hi - lo_t);
        auto g = [&](double s) { return slice(fr.hi - s * s) * 2 * s; };
        return integrate(g, 0, smax, quad.abs_tol, quad.rel_tol);
    };
    if (a_eff > fr.lo + 1e-12 * span) return upper_part(a_eff);

    // full body: both ends vanish like a square root
    double mid = 0.5 * (fr.lo + fr.hi);
    auto g_low = [&](double s) { return slice(fr.lo + s * s) * 2 * s; };
    double low = integrate(g_low, 0, std::sqrt(mid - fr.lo), quad.abs_tol, quad.rel_tol);
    return low + upper_part(mid);
}

CapFrame make_frame(const ConvexBody& b, const Halfspace& cut) {
    CapFrame fr;
    fr.u = cut.normal;
    fr.a = cut.offset;
    fr.hi = support_value(b, fr.u);
    Vec mu = -1.0 * fr.u;
    fr.lo = -support_value(b, mu);
    fr.x0 = interior_point(b);
    fr.t0 = dot(fr.x0, fr.u);
    fr.q_hi = support_point(b, fr.u);
    fr.q_lo = support_point(b, mu);
    return fr;
}

// exact constant-weight cap volume for balls and ellipsoids (dims 1-3)
double ellipsoid_cap_exact(const ConvexBody& b, const Halfspace& cut) {
    Vec v;       // normal in the principal frame
    Vec ax;      // semi-axes
    double off;  // offset relative to the center
    if (b.kind == ConvexBody::Kind::Ball) {
        v = cut.normal;
        ax = Vec(b.dim, b.radius);
        off = cut.offset - dot(b.center, cut.normal);
    } else {
        v = b.frame.apply(cut.normal);
        ax = b.semi_axes;
        off = cut.offset - dot(b.center, cut.normal);
    }
    // map to the unit ball: x = diag(ax) z
    Vec w = v;
    double prod = 1;
    for (int i = 0; i < b.dim; ++i) {
        w[i] *= ax[i];
        prod *= ax[i];
    }
    double m = norm(w);
    return prod * unit_ball_cap_volume(b.dim, off / m);
}

}  // namespace

double cap_weighted_moment(const ConvexBody& b, const Halfspace& cut, const Weight& w,
                           const std::function<double(const Vec&)>& g,
                           const QuadratureSpec& quad) {
    quad.validate();
    w.validate();
    if (w.ambient_dim != b.dim) throw NumericError("cap integral: weight dimension mismatch");

    if (quad.method == QuadratureSpec::Method::MonteCarlo || b.dim > 3) {
        if (b.dim > 3 && quad.method != QuadratureSpec::Method::MonteCarlo)
            throw NumericError("cap integral: dims > 3 require Monte Carlo");
        double se = 0;
        auto f = [&](const Vec& x) {
            if (dot(x, cut.normal) < cut.offset || !membership(b, x)) return 0.0;
            return g(x) * weight_eval(w, x);
        };
        double est = mc_indicator_integral(b, f, quad, &se);
        double target = std::max(quad.abs_tol, quad.rel_tol * std::abs(est));
        if (se > target)
            throw NumericError("cap integral: Monte Carlo standard error " +
                               std::to_string(se) + " above tolerance " +
                               std::to_string(target));
        return est;
    }

    CapFrame fr = make_frame(b, cut);
    if (fr.a >= fr.hi - 1e-15 * std::max(1.0, std::abs(fr.hi))) return 0;

    if (b.dim == 1) {
        double lo = std::max(fr.a, fr.lo);
        auto f = [&](double t) {
            Vec x = {t * fr.u[0]};  // t is the coordinate along u
            return g(x) * weight_eval(w, x);
        };
        return integrate(f, lo, fr.hi, quad.abs_tol, quad.rel_tol);
    }
    std::function<double(const Vec&)> f = [&](const Vec& x) {
        return g(x) * weight_eval(w, x);
    };
    return cap_integral_levels(b, fr, &f, quad);
}

double cap_weighted_volume(const ConvexBody& b, const Halfspace& cut, const Weight& w,
                           const QuadratureSpec& quad) {
    quad.validate();
    w.validate();
    if (w.ambient_dim != b.dim) throw NumericError("cap integral: weight dimension mismatch");

    bool round = b.kind == ConvexBody::Kind::Ball || b.kind == ConvexBody::Kind::Ellipsoid;
    if (round && w.kind == Weight::Kind::Constant && b.dim <= 3 &&
        quad.method != QuadratureSpec::Method::MonteCarlo)
        return w.eta * ellipsoid_cap_exact(b, cut);

    if (quad.method == QuadratureSpec::Method::MonteCarlo || b.dim > 3)
        return cap_weighted_moment(b, cut, w, [](const Vec&) { return 1.0; }, quad);

    CapFrame fr = make_frame(b, cut);
    if (fr.a >= fr.hi - 1e-15 * std::max(1.0, std::abs(fr.hi))) return 0;

    if (b.dim == 1) {
        double lo = std::max(fr.a, fr.lo);
        if (w.kind == Weight::Kind::Constant) return w.eta * (fr.hi - lo);
        double xa = fr.u[0] > 0 ? lo : -fr.hi;  // actual coordinate interval
        double xb = fr.u[0] > 0 ? fr.hi : -lo;
        if (w.kind == Weight::Kind::ExpHeight) return exp_height_segment_mass(xa, xb);
        auto f = [&](double x) { return weight_eval(w, {x}); };
        return integrate(f, xa, xb, quad.abs_tol, quad.rel_tol);
    }

    if (w.kind == Weight::Kind::Constant) {
        // polygonal shortcut in 2-D: clip and take the area
        if (b.dim == 2 && (b.kind == ConvexBody::Kind::HPolytope ||
                           b.kind == ConvexBody::Kind::VPolytope)) {
            Polygon p;
            for (const Vec& v : b.vertices) p.push_back({v[0], v[1]});
            Polygon cap = clip_polygon(p, {-fr.u[0], -fr.u[1]}, -fr.a);
            return w.eta * (cap.size() >= 3 ? polygon_area(cap) : 0.0);
        }
        return w.eta * cap_integral_levels(b, fr, nullptr, quad);
    }
    std::function<double(const Vec&)> f = [&](const Vec& x) { return weight_eval(w, x); };
    return cap_integral_levels(b, fr, &f, quad);
}

double body_weighted_mass(const ConvexBody& b, const Weight& w, const QuadratureSpec& quad) {
    Vec u(b.dim, 0.0);
    u.back() = 1.0;
    Vec mu = -1.0 * u;
    double below = -support_value(b, mu) - 1.0;
    return cap_weighted_volume(b, Halfspace(u, below), w, quad);
}

// ---------------------------------------------------------------------------

std::pair<double, double> ellipsoid_cap_bounds(const Vec& semi_axes, double h) {
    int n = static_cast<int>(semi_axes.size());
    if (n < 2) throw NumericError("ellipsoid_cap_bounds: need dimension >= 2");
    double an = semi_axes.back();
    if (h < 0 || h > an) throw NumericError("cap exceeds semi-axis");
    double prod = 1;
    for (int i = 0; i + 1 < n; ++i) prod *= semi_axes[i];
    double C = std::pow(2.0, (n + 1) / 2.0) * unit_ball_volume(n - 1) * prod /
               ((n + 1) * std::pow(an, (n - 1) / 2.0));
    double upper = C * std::pow(h, (n + 1) / 2.0);
    double lower = upper * std::pow(1.0 - h / (2 * an), (n - 1) / 2.0);
    return {lower, upper};
}

// ---------------------------------------------------------------------------
// halfspace intersection

namespace {

Vec chebyshev_like_center(const std::vector<Halfspace>& hs, const Box& bbox) {
    auto slack = [&](const Vec& p) {
        double s = std::numeric_limits<double>::infinity();
        for (const Halfspace& h : hs) s = std::min(s, h.offset - dot(p, h.normal));
        for (int i = 0; i < bbox.dim(); ++i) {
            s = std::min(s, p[i] - bbox.lo[i]);
            s = std::min(s, bbox.hi[i] - p[i]);
        }
        return s;
    };
    auto neg = [&](const Vec& p) { return -slack(p); };
    Vec p = minimize_convex(neg, nullptr, bbox.center(), 1e-10, 600);
    if (!(slack(p) > 1e-9 * std::max(1.0, bbox.diameter())))
        throw NumericError("floating body empty");
    return p;
}

}  // namespace

ConvexBody halfspace_intersection(const std::vector<Halfspace>& hs, int dim, const Box& bbox) {
    if (bbox.dim() != dim) throw NumericError("halfspace_intersection: bbox dimension mismatch");
    if (dim == 2) {
        Polygon p = {{bbox.lo[0], bbox.lo[1]},
                     {bbox.hi[0], bbox.lo[1]},
                     {bbox.hi[0], bbox.hi[1]},
                     {bbox.lo[0], bbox.hi[1]}};
        for (const Halfspace& h : hs) {
            p = clip_polygon(p, {h.normal[0], h.normal[1]}, h.offset);
            if (p.size() < 3) throw NumericError("floating body empty");
        }
        std::vector<Vec> verts;
        for (const auto& v : p) verts.push_back({v[0], v[1]});
        return ConvexBody::vpolytope(2, verts);
    }
    if (dim != 3) throw NumericError("halfspace_intersection: dims 2 and 3 only");

    std::vector<Halfspace> all = hs;
    for (int i = 0; i < 3; ++i) {
        Vec u(3, 0.0);
        u[i] = 1;
        all.push_back(Halfspace(u, bbox.hi[i]));
        u[i] = -1;
        all.push_back(Halfspace(u, -bbox.lo[i]));
    }
    Vec p = chebyshev_like_center(all, bbox);

    // dual transform about p: halfspace <x,u> <= a with slack s maps to u/s
    std::vector<std::array<double, 3>> dual;
    for (const Halfspace& h : all) {
        double s = h.offset - dot(p, h.normal);
        if (!(s > 0)) throw NumericError("floating body empty");
        dual.push_back({h.normal[0] / s, h.normal[1] / s, h.normal[2] / s});
    }
    Hull3 dh = convex_hull_3d(dual);

    // each dual facet plane <n,y> = d yields the primal vertex p + n/d
    std::vector<Vec> verts;
    double sc = std::max(1.0, bbox.diameter());
    for (const auto& f : dh.faces) {
        const auto &a = dh.vertices[f[0]], &b = dh.vertices[f[1]], &c = dh.vertices[f[2]];
        Vec n = {(b[1] - a[1]) * (c[2] - a[2]) - (b[2] - a[2]) * (c[1] - a[1]),
                 (b[2] - a[2]) * (c[0] - a[0]) - (b[0] - a[0]) * (c[2] - a[2]),
                 (b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0])};
        double d = n[0] * a[0] + n[1] * a[1] + n[2] * a[2];
        if (!(std::abs(d) > 1e-14 * norm(n))) continue;
        Vec v = p + (1.0 / d) * n;
        bool dup = false;
        for (const Vec& u : verts)
            if (norm(u - v) < 1e-9 * sc) {
                dup = true;
                break;
            }
        if (!dup) verts.push_back(v);
    }
    if (verts.size() < 4) throw NumericError("floating body empty");
    return ConvexBody::vpolytope(3, verts);
}

}  // namespace floatlab
