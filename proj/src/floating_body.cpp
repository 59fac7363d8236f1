#include "floatlab/floating_body.hpp"

#include <cmath>

namespace floatlab {

DirectionGrid DirectionGrid::circle(int m) {
    if (m < 4) throw NumericError("direction grid: need at least 2*dim directions");
    DirectionGrid g;
    g.dim = 2;
    g.directions.reserve(m);
    for (int i = 0; i < m; ++i) {
        double th = 2 * M_PI * i / m;
        g.directions.push_back({std::cos(th), std::sin(th)});
    }
    return g;
}

DirectionGrid DirectionGrid::sphere(int m) {
    if (m < 6) throw NumericError("direction grid: need at least 2*dim directions");
    DirectionGrid g;
    g.dim = 3;
    g.directions.reserve(m);
    const double ga = M_PI * (3.0 - std::sqrt(5.0));
    for (int i = 0; i < m; ++i) {
        double z = 1.0 - 2.0 * (i + 0.5) / m;
        double r = std::sqrt(std::max(0.0, 1.0 - z * z));
        double th = ga * i;
        g.directions.push_back({r * std::cos(th), r * std::sin(th), z});
    }
    return g;
}

double cap_offset_for_mass(const ConvexBody& body, const Vec& u, const Weight& w, double delta,
                           const QuadratureSpec& quad) {
    if (!(delta > 0)) throw NumericError("cap_offset_for_mass: delta must be positive");
    Vec un = normalized(u);
    Vec mu = -1.0 * un;
    double hi = support_value(body, un);
    double lo = -support_value(body, mu);
    // cap-mass quadrature error must stay well below delta
    QuadratureSpec q = quad.with_tols(std::min(quad.abs_tol, 1e-3 * delta), quad.rel_tol);
    auto mass = [&](double a) { return cap_weighted_volume(body, Halfspace(un, a), w, q); };
    double total = mass(lo - 1e-9 * std::max(1.0, hi - lo));
    if (delta >= total) throw NumericError("delta too large");
    auto g = [&](double a) { return mass(a) - delta; };
    double xtol = 1e-11 * std::max(1.0, hi - lo);
    return brent_root(g, lo, hi, xtol);
}

FloatingBodyApprox weighted_floating_body(const ConvexBody& body, const Weight& w, double delta,
                                          const DirectionGrid& grid, const QuadratureSpec& quad) {
    if (grid.dim != body.dim) throw NumericError("direction grid dimension mismatch");
    if (delta < 0) throw NumericError("delta must be nonnegative");
    FloatingBodyApprox fb;
    fb.source = body;
    fb.weight = w;
    fb.delta = delta;
    fb.directions = grid.directions;
    if (delta == 0) {
        // K_0 = K
        for (const Vec& u : grid.directions)
            fb.offsets.push_back(support_value(body, u));
        fb.polytope = body;
        return fb;
    }
    std::vector<Halfspace> hs;
    hs.reserve(grid.count());
    for (const Vec& u : grid.directions) {
        double a = cap_offset_for_mass(body, u, w, delta, quad);
        fb.offsets.push_back(a);
        hs.push_back(Halfspace(u, a));
    }
    try {
        fb.polytope = halfspace_intersection(hs, body.dim, body.bounding_box);
    } catch (const NumericError&) {
        throw NumericError("floating body empty at this delta");
    }
    return fb;
}

double FloatingBodyApprox::volume(const QuadratureSpec& quad, double* std_err) const {
    return body_volume(polytope, quad, std_err);
}

Vec phi_barycenter(const ConvexBody& body, const Halfspace& cut, const Weight& w,
                   const QuadratureSpec& quad) {
    double mass = cap_weighted_volume(body, cut, w, quad);
    if (!(mass > 0)) throw NumericError("phi_barycenter: zero-mass cap");
    Vec bc(body.dim);
    for (int i = 0; i < body.dim; ++i) {
        bc[i] = cap_weighted_moment(body, cut, w, [i](const Vec& x) { return x[i]; }, quad) / mass;
    }
    return bc;
}

}  // namespace floatlab
