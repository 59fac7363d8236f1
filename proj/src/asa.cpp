#include "floatlab/asa.hpp"

#include <cmath>

namespace floatlab {

namespace {

// adaptive integral over a 1- or 2-D box
double integrate_box(const std::function<double(const Vec&)>& f, const Box& box, double abs_tol,
                     double rel_tol) {
    if (box.dim() == 1)
        return integrate([&](double x) { return f({x}); }, box.lo[0], box.hi[0], abs_tol, rel_tol);
    if (box.dim() == 2) {
        double w = std::max(box.hi[0] - box.lo[0], 1.0);
        return integrate(
            [&](double x0) {
                return integrate([&](double x1) { return f({x0, x1}); }, box.lo[1], box.hi[1],
                                 abs_tol / w, rel_tol);
            },
            box.lo[0], box.hi[0], abs_tol, rel_tol);
    }
    throw NumericError("integration supported for dimensions 1 and 2");
}

double clamp_det(const Mat& h) { return std::max(determinant(h), 0.0); }

// as_p boundary integrand value at a boundary point
double asp_point(double kappa, double zn, double ds, int n, double p) {
    return std::pow(std::max(kappa, 0.0), p / (n + p)) *
           std::pow(zn, -n * (p - 1) / (n + p)) * ds;
}

double asp_ellipse_2d(const ConvexBody& body, double p, const QuadratureSpec& quad) {
    double a = body.kind == ConvexBody::Kind::Ball ? body.radius : body.semi_axes[0];
    double b = body.kind == ConvexBody::Kind::Ball ? body.radius : body.semi_axes[1];
    bool framed = body.kind == ConvexBody::Kind::Ellipsoid;
    auto f = [&](double t) {
        double ct = std::cos(t), st = std::sin(t);
        double m = std::sqrt(b * b * ct * ct + a * a * st * st);
        double kappa = a * b / (m * m * m);
        Vec nloc = {b * ct / m, a * st / m};
        Vec zloc = {a * ct, b * st};
        Vec N = framed ? body.frame.apply_transposed(nloc) : nloc;
        Vec z = (framed ? body.frame.apply_transposed(zloc) : zloc) + body.center;
        return asp_point(kappa, dot(z, N), m, 2, p);
    };
    return integrate(f, 0, 2 * M_PI, quad.abs_tol, quad.rel_tol);
}

double asp_ellipsoid_3d(const ConvexBody& body, double p, const QuadratureSpec& quad) {
    double a = body.kind == ConvexBody::Kind::Ball ? body.radius : body.semi_axes[0];
    double b = body.kind == ConvexBody::Kind::Ball ? body.radius : body.semi_axes[1];
    double c = body.kind == ConvexBody::Kind::Ball ? body.radius : body.semi_axes[2];
    bool framed = body.kind == ConvexBody::Kind::Ellipsoid;
    const int nphi = 256;
    (void)quad;
    auto ftheta = [&](double th) {
        double acc = 0;
        for (int j = 0; j < nphi; ++j) {
            double ph = 2 * M_PI * j / nphi;
            Vec u = {std::sin(th) * std::cos(ph), std::sin(th) * std::sin(ph), std::cos(th)};
            double h = std::sqrt(u[0] * u[0] / (a * a) + u[1] * u[1] / (b * b) +
                                 u[2] * u[2] / (c * c));
            double kappa = 1.0 / (a * a * b * b * c * c * h * h * h * h);
            Vec nloc = {u[0] / (a * h), u[1] / (b * h), u[2] / (c * h)};
            Vec zloc = {a * u[0], b * u[1], c * u[2]};
            Vec N = framed ? body.frame.apply_transposed(nloc) : nloc;
            Vec z = (framed ? body.frame.apply_transposed(zloc) : zloc) + body.center;
            // surface element a b c h dsigma
            acc += asp_point(kappa, dot(z, N), a * b * c * h, 3, p);
        }
        return acc * (2 * M_PI / nphi) * std::sin(th);
    };
    return gauss_legendre(ftheta, 0, M_PI, 32);
}

double asp_gauge_2d(const ConvexBody& body, double p, const QuadratureSpec& quad) {
    auto rad = [&](double t) {
        return 1.0 / body.gauge({std::cos(t), std::sin(t)});
    };
    const double h = 1e-5;
    auto f = [&](double t) {
        double r = rad(t), rp = (rad(t + h) - rad(t - h)) / (2 * h);
        double rpp = (rad(t + h) - 2 * r + rad(t - h)) / (h * h);
        double m2 = r * r + rp * rp, m = std::sqrt(m2);
        double kappa = (r * r + 2 * rp * rp - r * rpp) / (m2 * m);
        double ct = std::cos(t), st = std::sin(t);
        Vec z = {r * ct, r * st};
        Vec T = {rp * ct - r * st, rp * st + r * ct};  // d z / dt, CCW
        Vec N = {T[1] / m, -T[0] / m};                 // outward
        return asp_point(kappa, dot(z, N), m, 2, p);
    };
    return integrate(f, 0, 2 * M_PI, quad.abs_tol, quad.rel_tol);
}

}  // namespace

double constant_c(CKind kind, int n, int s) {
    switch (kind) {
        case CKind::BodyN:
            return 0.5 * std::pow((n + 1) / unit_ball_volume(n - 1), 2.0 / (n + 1));
        case CKind::FuncN1:
            return 0.5 * std::pow((n + 2) / unit_ball_volume(n), 2.0 / (n + 2));
        case CKind::SconcaveNS:
            // s times the body constant of the (n+s)-dimensional lift; the
            // denominator vol_{n+s-1}(B^{n+s-1}) follows the same pattern as
            // the other two kinds and is confirmed by the lifted-body sweep
            return 0.5 * s *
                   std::pow((n + s + 1) / unit_ball_volume(n + s - 1), 2.0 / (n + s + 1));
    }
    throw NumericError("unknown constant kind");
}

ASAResult asa_body_p(const ConvexBody& body, double p, const QuadratureSpec& quad) {
    if (p == -body.dim) throw NumericError("as_p undefined at p = -n");
    ASAResult out;
    out.tag = "as_p";
    out.param = p;
    out.error_estimate = quad.abs_tol;
    switch (body.kind) {
        case ConvexBody::Kind::Ball:
            if (body.dim == 1) {
                double e = (p - 1) / (1 + p);
                double c = body.center[0], r = body.radius;
                out.value = std::pow(r + c, -e) + std::pow(r - c, -e);
                return out;
            }
            [[fallthrough]];
        case ConvexBody::Kind::Ellipsoid:
            if (body.dim == 2)
                out.value = asp_ellipse_2d(body, p, quad);
            else if (body.dim == 3)
                out.value = asp_ellipsoid_3d(body, p, quad);
            else
                throw NumericError("as_p supported for dimensions 1-3");
            return out;
        case ConvexBody::Kind::Gauge:
            if (body.dim != 2) throw NumericError("gauge-body as_p supported in dimension 2");
            out.value = asp_gauge_2d(body, p, quad);
            return out;
        default:
            throw NumericError("as_p needs a body with a curvature parameterization");
    }
}

ASAResult asa_profile_p(const SConcaveFunction& f, double p, const QuadratureSpec& quad) {
    if (f.n != 1 || f.s != 1)
        throw NumericError("profile as_p is for 2-D revolution bodies (n = s = 1)");
    if (p <= 0) throw NumericError("profile as_p needs p > 0");
    const Box& bb = f.support.bounding_box;
    auto arc = [&](double x) {
        double g = f.g({x});
        double g1 = f.root_gradient({x})[0];
        double g2 = f.root_hessian({x})(0, 0);
        double m = std::sqrt(1 + g1 * g1);
        double kappa = std::max(-g2, 0.0) / (m * m * m);
        double zn = (g - x * g1) / m;
        return asp_point(kappa, zn, m, 2, p);
    };
    ASAResult out;
    out.tag = "as_p";
    out.param = p;
    out.error_estimate = quad.abs_tol;
    // two symmetric arcs; flat side edges (if any) and corners carry no mass
    out.value = 2 * integrate(arc, bb.lo[0], bb.hi[0], quad.abs_tol, quad.rel_tol);
    return out;
}

ASAResult asa_weighted(const ConvexFunction& psi, const Weight& w, const QuadratureSpec& quad) {
    if (w.ambient_dim != psi.dim + 1)
        throw NumericError("weight must live on the epigraph space");
    int n = psi.dim;
    double e = -2.0 / (n + 2);
    auto f = [&](const Vec& x) {
        double v = psi(x);
        Vec z = x;
        z.push_back(v);
        return std::pow(clamp_det(psi.hessian(x)), 1.0 / (n + 2)) *
               std::pow(weight_eval(w, z), e) * std::exp(-v);
    };
    ASAResult out;
    out.tag = "as_phi";
    out.error_estimate = quad.abs_tol;
    out.value = integrate_box(f, psi.truncation_box(40.0), quad.abs_tol, quad.rel_tol);
    return out;
}

ASAResult asa_exponential(const ConvexFunction& psi, const QuadratureSpec& quad) {
    int n = psi.dim;
    double a = static_cast<double>(n) / (n + 2);
    auto f = [&](const Vec& x) {
        return std::pow(clamp_det(psi.hessian(x)), 1.0 / (n + 2)) * std::exp(-a * psi(x));
    };
    ASAResult out;
    out.tag = "as_phie";
    out.error_estimate = quad.abs_tol;
    out.value = integrate_box(f, psi.truncation_box(40.0 / a), quad.abs_tol, quad.rel_tol);
    return out;
}

ASAResult asa_lambda(const ConvexFunction& psi, double lambda, const QuadratureSpec& quad) {
    int n = psi.dim;
    auto f = [&](const Vec& x) {
        double d = clamp_det(psi.hessian(x));
        double dl = lambda == 0 ? 1.0 : std::pow(d, lambda);
        return std::exp((2 * lambda - 1) * psi(x) - lambda * dot(x, psi.gradient(x))) * dl;
    };
    ASAResult out;
    out.tag = "as_lambda";
    out.param = lambda;
    out.error_estimate = quad.abs_tol;
    out.value = integrate_box(f, psi.truncation_box(60.0), quad.abs_tol, quad.rel_tol);
    return out;
}

ASAResult asa_sconcave(const SConcaveFunction& f, const Weight& phi, const QuadratureSpec& quad) {
    if (phi.kind != Weight::Kind::Constant && phi.kind != Weight::Kind::Rotational)
        throw NumericError("weight kind incompatible with experiment");
    int n = f.n, s = f.s;
    double ef = (s - 1) * (n + s) / static_cast<double>(s * (n + s + 1));
    double ew = -2.0 / (n + s + 1);
    auto integrand = [&](const Vec& x) {
        if (!membership(f.support, x)) return 0.0;
        double g = f.root(x);
        double fx = f(x);
        double phv;
        if (phi.kind == Weight::Kind::Constant) {
            phv = phi.eta;
        } else {
            Vec z = x;
            z.push_back(g);
            phv = phi.phi(z);
        }
        return std::pow(std::abs(determinant(f.root_hessian(x))), 1.0 / (n + s + 1)) *
               (ef == 0 ? 1.0 : std::pow(fx, ef)) * std::pow(phv, ew);
    };
    ASAResult out;
    out.tag = "as_s_phi";
    out.error_estimate = quad.abs_tol;
    out.value = integrate_box(integrand, f.support.bounding_box, quad.abs_tol, quad.rel_tol);
    return out;
}

ASAResult asa_lambda_sconcave(const SConcaveFunction& f, double lambda,
                              const QuadratureSpec& quad) {
    int n = f.n, s = f.s;
    double eg = (s - 1) * (1 - lambda);
    double ed = lambda * (n + s + 1) - 1;
    // psi_f = s(1 - g): 1 - psi_f/s = g, det D2 psi_f = s^n det(-D2 g),
    // 1 + (<x, grad psi_f> - psi_f)/s = g - <x, grad g>
    auto body = [&](const Vec& x) {
        if (!membership(f.support, x)) return 0.0;
        double g = f.root(x);
        Mat hg = f.root_hessian(x);
        Mat neg(hg.n);
        for (int i = 0; i < hg.n; ++i)
            for (int j = 0; j < hg.n; ++j) neg(i, j) = -hg(i, j);
        double det = std::pow(static_cast<double>(s), n) * std::max(determinant(neg), 0.0);
        double denom = g - dot(x, f.root_gradient(x));
        if (denom <= 0) throw NumericError("lambda functional needs the origin inside supp f");
        return (eg == 0 ? 1.0 : std::pow(g, eg)) * std::pow(det, lambda) /
               (ed == 0 ? 1.0 : std::pow(denom, ed));
    };
    ASAResult out;
    out.tag = "as_s_lambda";
    out.param = lambda;
    out.error_estimate = quad.abs_tol;
    out.value = integrate_box(body, f.support.bounding_box, quad.abs_tol, quad.rel_tol) /
                (1 + n * s);
    return out;
}

std::pair<double, double> gauge_identity_check(const ConvexBody& K, const QuadratureSpec& quad) {
    int n = K.dim;
    ConvexFunction psi = ConvexFunction::gauge_square(K);
    double lhs = asa_exponential(psi, quad).value;
    double pref = std::pow(1 + 2.0 / n, n / 2.0) * std::pow(2 * M_PI, n / 2.0) /
                  (n * unit_ball_volume(n));
    double rhs = pref * asa_body_p(K, n / (n + 1.0), quad).value;
    return {lhs, rhs};
}

}  // namespace floatlab
