#include "floatlab/hull.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace floatlab {

namespace {
double cross2(const std::array<double, 2>& o, const std::array<double, 2>& a,
              const std::array<double, 2>& b) {
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0]);
}
}  // namespace

Polygon convex_hull_2d(std::vector<std::array<double, 2>> pts) {
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    size_t n = pts.size();
    if (n < 3) return pts;
    Polygon h(2 * n);
    size_t k = 0;
    for (size_t i = 0; i < n; ++i) {  // lower
        while (k >= 2 && cross2(h[k - 2], h[k - 1], pts[i]) <= 0) --k;
        h[k++] = pts[i];
    }
    for (size_t i = n - 1, t = k + 1; i-- > 0;) {  // upper
        while (k >= t && cross2(h[k - 2], h[k - 1], pts[i]) <= 0) --k;
        h[k++] = pts[i];
    }
    h.resize(k - 1);
    return h;
}

double polygon_area(const Polygon& p) {
    double s = 0;
    size_t n = p.size();
    for (size_t i = 0; i < n; ++i) {
        const auto& a = p[i];
        const auto& b = p[(i + 1) % n];
        s += a[0] * b[1] - b[0] * a[1];
    }
    return 0.5 * s;
}

Polygon clip_polygon(const Polygon& p, const std::array<double, 2>& u, double a) {
    Polygon out;
    size_t n = p.size();
    if (n == 0) return out;
    auto side = [&](const std::array<double, 2>& x) { return x[0] * u[0] + x[1] * u[1] - a; };
    for (size_t i = 0; i < n; ++i) {
        const auto& cur = p[i];
        const auto& nxt = p[(i + 1) % n];
        double sc = side(cur), sn = side(nxt);
        if (sc <= 0) out.push_back(cur);
        if ((sc < 0 && sn > 0) || (sc > 0 && sn < 0)) {
            double t = sc / (sc - sn);
            out.push_back({cur[0] + t * (nxt[0] - cur[0]), cur[1] + t * (nxt[1] - cur[1])});
        }
    }
    return out;
}

bool polygon_contains(const Polygon& p, const std::array<double, 2>& x, double tol) {
    size_t n = p.size();
    if (n < 3) return false;
    for (size_t i = 0; i < n; ++i) {
        const auto& a = p[i];
        const auto& b = p[(i + 1) % n];
        double ex = b[0] - a[0], ey = b[1] - a[1];
        double elen = std::sqrt(ex * ex + ey * ey);
        if (cross2(a, b, x) < -tol * std::max(1.0, elen)) return false;
    }
    return true;
}

bool polygon_max_y_at(const Polygon& p, double x, double& y_out) {
    size_t n = p.size();
    bool found = false;
    double best = -std::numeric_limits<double>::infinity();
    for (size_t i = 0; i < n; ++i) {
        const auto& a = p[i];
        const auto& b = p[(i + 1) % n];
        double x0 = a[0], x1 = b[0];
        if ((x0 - x) * (x1 - x) > 0) continue;
        double y;
        if (x0 == x1) {
            if (x0 != x) continue;
            y = std::max(a[1], b[1]);
        } else {
            double t = (x - x0) / (x1 - x0);
            y = a[1] + t * (b[1] - a[1]);
        }
        if (!found || y > best) best = y;
        found = true;
    }
    if (found) y_out = best;
    return found;
}

// ---------------------------------------------------------------------------

namespace {

using P3 = std::array<double, 3>;

P3 sub(const P3& a, const P3& b) { return {a[0] - b[0], a[1] - b[1], a[2] - b[2]}; }
P3 cross3(const P3& a, const P3& b) {
    return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}
double dot3(const P3& a, const P3& b) { return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]; }

struct Face {
    int a, b, c;
    P3 n;        // outward normal (not normalized)
    double off;  // <n, vertex>
    bool alive = true;
};

double signed_dist(const Face& f, const P3& p) { return dot3(f.n, p) - f.off; }

}  // namespace

Hull3 convex_hull_3d(const std::vector<P3>& pts) {
    size_t n = pts.size();
    if (n < 4) throw NumericError("convex_hull_3d: need at least 4 points");

    double scale = 0;
    for (const auto& p : pts)
        scale = std::max({scale, std::abs(p[0]), std::abs(p[1]), std::abs(p[2])});
    const double eps = 1e-10 * std::max(1.0, scale);

    // initial non-degenerate tetrahedron
    size_t i1 = 1;
    while (i1 < n && std::abs(pts[i1][0] - pts[0][0]) < eps &&
           std::abs(pts[i1][1] - pts[0][1]) < eps && std::abs(pts[i1][2] - pts[0][2]) < eps)
        ++i1;
    if (i1 == n) throw NumericError("convex_hull_3d: degenerate input");
    size_t i2 = 0;
    double best = 0;
    for (size_t i = 0; i < n; ++i) {
        P3 c = cross3(sub(pts[i1], pts[0]), sub(pts[i], pts[0]));
        double m = dot3(c, c);
        if (m > best) {
            best = m;
            i2 = i;
        }
    }
    if (best < eps * eps) throw NumericError("convex_hull_3d: collinear input");
    P3 nrm = cross3(sub(pts[i1], pts[0]), sub(pts[i2], pts[0]));
    size_t i3 = 0;
    best = 0;
    for (size_t i = 0; i < n; ++i) {
        double d = std::abs(dot3(nrm, sub(pts[i], pts[0])));
        if (d > best) {
            best = d;
            i3 = i;
        }
    }
    if (best < eps) throw NumericError("convex_hull_3d: coplanar input");

    std::vector<Face> faces;
    auto add_face = [&](int a, int b, int c, const P3& inside) {
        Face f;
        f.a = a;
        f.b = b;
        f.c = c;
        f.n = cross3(sub(pts[b], pts[a]), sub(pts[c], pts[a]));
        f.off = dot3(f.n, pts[a]);
        if (dot3(f.n, inside) - f.off > 0) {  // flip outward
            std::swap(f.b, f.c);
            f.n = {-f.n[0], -f.n[1], -f.n[2]};
            f.off = -f.off;
        }
        faces.push_back(f);
    };
    P3 cen = {0, 0, 0};
    for (size_t idx : {size_t(0), i1, i2, i3})
        for (int k = 0; k < 3; ++k) cen[k] += pts[idx][k] / 4.0;
    int v0 = 0, v1 = static_cast<int>(i1), v2 = static_cast<int>(i2), v3 = static_cast<int>(i3);
    add_face(v0, v1, v2, cen);
    add_face(v0, v1, v3, cen);
    add_face(v0, v2, v3, cen);
    add_face(v1, v2, v3, cen);

    for (size_t i = 0; i < n; ++i) {
        if (i == 0 || i == i1 || i == i2 || i == i3) continue;
        // collect visible faces
        std::vector<size_t> visible;
        for (size_t fi = 0; fi < faces.size(); ++fi) {
            if (!faces[fi].alive) continue;
            double sc = 1e-9 * std::sqrt(dot3(faces[fi].n, faces[fi].n)) *
                        std::max(1.0, scale);
            if (signed_dist(faces[fi], pts[i]) > sc) visible.push_back(fi);
        }
        if (visible.empty()) continue;
        // horizon: edges of visible faces shared with a hidden face
        std::vector<std::pair<int, int>> horizon;
        auto edge_visible = [&](int a, int b) {
            for (size_t fi : visible) {
                const Face& f = faces[fi];
                if ((f.a == b && f.b == a) || (f.b == b && f.c == a) || (f.c == b && f.a == a))
                    return true;
            }
            return false;
        };
        for (size_t fi : visible) {
            const Face& f = faces[fi];
            int e[3][2] = {{f.a, f.b}, {f.b, f.c}, {f.c, f.a}};
            for (auto& ed : e)
                if (!edge_visible(ed[0], ed[1])) horizon.emplace_back(ed[0], ed[1]);
        }
        for (size_t fi : visible) faces[fi].alive = false;
        for (auto& [a, b] : horizon) add_face(a, b, static_cast<int>(i), cen);
    }

    // compact vertex set
    Hull3 h;
    std::vector<int> remap(n, -1);
    for (const Face& f : faces) {
        if (!f.alive) continue;
        for (int v : {f.a, f.b, f.c})
            if (remap[v] < 0) {
                remap[v] = static_cast<int>(h.vertices.size());
                h.vertices.push_back(pts[v]);
            }
        h.faces.push_back({remap[f.a], remap[f.b], remap[f.c]});
    }
    return h;
}

double Hull3::volume() const {
    double s = 0;
    for (const auto& f : faces) {
        const P3 &a = vertices[f[0]], &b = vertices[f[1]], &c = vertices[f[2]];
        s += dot3(a, cross3(b, c));
    }
    return s / 6.0;
}

bool Hull3::contains(const P3& p, double tol) const {
    for (const auto& f : faces) {
        const P3 &a = vertices[f[0]], &b = vertices[f[1]], &c = vertices[f[2]];
        P3 nrm = cross3(sub(b, a), sub(c, a));
        double nn = std::sqrt(dot3(nrm, nrm));
        if (nn == 0) continue;
        if (dot3(nrm, sub(p, a)) > tol * nn) return false;
    }
    return true;
}

}  // namespace floatlab
