#include "floatlab/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace floatlab {

double dot(const Vec& a, const Vec& b) {
    double s = 0;
    for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

double norm(const Vec& a) { return std::sqrt(dot(a, a)); }

Vec normalized(const Vec& a) {
    double n = norm(a);
    if (n == 0) throw NumericError("cannot normalize zero vector");
    Vec r = a;
    for (auto& v : r) v /= n;
    return r;
}

Vec operator+(const Vec& a, const Vec& b) {
    Vec r = a;
    for (size_t i = 0; i < r.size(); ++i) r[i] += b[i];
    return r;
}

Vec operator-(const Vec& a, const Vec& b) {
    Vec r = a;
    for (size_t i = 0; i < r.size(); ++i) r[i] -= b[i];
    return r;
}

Vec operator*(double s, const Vec& a) {
    Vec r = a;
    for (auto& v : r) v *= s;
    return r;
}

Mat Mat::identity(int n) {
    Mat m(n);
    for (int i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
}

Vec Mat::apply(const Vec& x) const {
    Vec y(n, 0.0);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) y[i] += (*this)(i, j) * x[j];
    return y;
}

Vec Mat::apply_transposed(const Vec& x) const {
    Vec y(n, 0.0);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) y[j] += (*this)(i, j) * x[i];
    return y;
}

double determinant(const Mat& m) {
    // LU with partial pivoting
    Mat lu = m;
    int n = m.n;
    double det = 1.0;
    for (int k = 0; k < n; ++k) {
        int piv = k;
        for (int i = k + 1; i < n; ++i)
            if (std::abs(lu(i, k)) > std::abs(lu(piv, k))) piv = i;
        if (lu(piv, k) == 0.0) return 0.0;
        if (piv != k) {
            for (int j = 0; j < n; ++j) std::swap(lu(piv, j), lu(k, j));
            det = -det;
        }
        det *= lu(k, k);
        for (int i = k + 1; i < n; ++i) {
            double f = lu(i, k) / lu(k, k);
            for (int j = k; j < n; ++j) lu(i, j) -= f * lu(k, j);
        }
    }
    return det;
}

double min_symmetric_eigenvalue(const Mat& m) {
    Mat a = m;
    int n = a.n;
    for (int sweep = 0; sweep < 64; ++sweep) {
        double off = 0;
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j) off += a(i, j) * a(i, j);
        if (off < 1e-24) break;
        for (int p = 0; p < n; ++p)
            for (int q = p + 1; q < n; ++q) {
                if (std::abs(a(p, q)) < 1e-18) continue;
                double theta = 0.5 * std::atan2(2 * a(p, q), a(q, q) - a(p, p));
                double c = std::cos(theta), s = std::sin(theta);
                for (int k = 0; k < n; ++k) {
                    double apk = a(p, k), aqk = a(q, k);
                    a(p, k) = c * apk - s * aqk;
                    a(q, k) = s * apk + c * aqk;
                }
                for (int k = 0; k < n; ++k) {
                    double akp = a(k, p), akq = a(k, q);
                    a(k, p) = c * akp - s * akq;
                    a(k, q) = s * akp + c * akq;
                }
            }
    }
    double mn = a(0, 0);
    for (int i = 1; i < n; ++i) mn = std::min(mn, a(i, i));
    return mn;
}

Vec Box::center() const {
    Vec c(lo.size());
    for (size_t i = 0; i < lo.size(); ++i) c[i] = 0.5 * (lo[i] + hi[i]);
    return c;
}

bool Box::contains(const Vec& x) const {
    for (size_t i = 0; i < lo.size(); ++i)
        if (x[i] < lo[i] || x[i] > hi[i]) return false;
    return true;
}

double Box::diameter() const {
    double d2 = 0;
    for (size_t i = 0; i < lo.size(); ++i) d2 += (hi[i] - lo[i]) * (hi[i] - lo[i]);
    return std::sqrt(d2);
}

double unit_ball_volume(int n) {
    if (n == 0) return 1.0;
    return std::pow(M_PI, 0.5 * n) / std::tgamma(0.5 * n + 1.0);
}

double unit_sphere_area(int n) { return n * unit_ball_volume(n); }

void QuadratureSpec::validate() const {
    if (abs_tol <= 0 || rel_tol <= 0) throw NumericError("quadrature tolerances must be positive");
    if (samples < 1) throw NumericError("quadrature sample count must be >= 1");
    if (points_per_axis < 1) throw NumericError("points per axis must be >= 1");
}

QuadratureSpec QuadratureSpec::with_tols(double abs, double rel) const {
    QuadratureSpec q = *this;
    q.abs_tol = abs;
    q.rel_tol = rel;
    return q;
}

// ---------------------------------------------------------------------------

namespace {

// 7-point Gauss-Lobatto kernel with embedded 4-point estimate.
double gl_adapt(const std::function<double(double)>& f, double a, double b, double fa,
                double fb, double tol, int depth) {
    const double alpha = std::sqrt(2.0 / 3.0);
    const double beta = 1.0 / std::sqrt(5.0);
    double m = 0.5 * (a + b), h = 0.5 * (b - a);
    double x1 = m - alpha * h, x2 = m - beta * h, x3 = m, x4 = m + beta * h, x5 = m + alpha * h;
    double f1 = f(x1), f2 = f(x2), f3 = f(x3), f4 = f(x4), f5 = f(x5);
    double i2 = (h / 6.0) * (fa + fb + 5.0 * (f2 + f4));
    double i1 = (h / 1470.0) *
                (77.0 * (fa + fb) + 432.0 * (f1 + f5) + 625.0 * (f2 + f4) + 672.0 * f3);
    if (depth <= 0 || std::abs(i1 - i2) <= tol || m == a || m == b) return i1;
    return gl_adapt(f, a, x1, fa, f1, tol * 0.7, depth - 1) +
           gl_adapt(f, x1, x2, f1, f2, tol * 0.7, depth - 1) +
           gl_adapt(f, x2, x3, f2, f3, tol * 0.7, depth - 1) +
           gl_adapt(f, x3, x4, f3, f4, tol * 0.7, depth - 1) +
           gl_adapt(f, x4, x5, f4, f5, tol * 0.7, depth - 1) +
           gl_adapt(f, x5, b, f5, fb, tol * 0.7, depth - 1);
}

}  // namespace

double integrate(const std::function<double(double)>& f, double a, double b, double abs_tol,
                 double rel_tol) {
    if (a == b) return 0.0;
    // Endpoint nodes may hit integrable singularities; treat those as 0.
    auto g = [&](double x) {
        double v = f(x);
        return std::isfinite(v) ? v : 0.0;
    };
    // coarse scale estimate for the relative tolerance
    double rough = 0;
    for (int i = 0; i < 16; ++i) {
        double x = a + (b - a) * (i + 0.5) / 16.0;
        rough += std::abs(g(x));
    }
    rough *= std::abs(b - a) / 16.0;
    double tol = std::max(abs_tol, rel_tol * rough);
    return gl_adapt(g, a, b, g(a), g(b), tol, 28);
}

namespace {
// Gauss-Legendre nodes/weights on [-1,1]
const double gl16_x[8] = {0.0950125098376374, 0.2816035507792589, 0.4580167776572274,
                          0.6178762444026438, 0.7554044083550030, 0.8656312023878318,
                          0.9445750230732326, 0.9894009349916499};
const double gl16_w[8] = {0.1894506104550685, 0.1826034150449236, 0.1691565193950025,
                          0.1495959888165767, 0.1246289712555339, 0.0951585116824928,
                          0.0622535239386479, 0.0271524594117541};
const double gl32_x[16] = {0.0483076656877383, 0.1444719615827965, 0.2392873622521371,
                           0.3318686022821277, 0.4213512761306353, 0.5068999089322294,
                           0.5877157572407623, 0.6630442669302152, 0.7321821187402897,
                           0.7944837959679424, 0.8493676137325700, 0.8963211557660521,
                           0.9349060759377397, 0.9647622555875064, 0.9856115115452684,
                           0.9972638618494816};
const double gl32_w[16] = {0.0965400885147278, 0.0956387200792749, 0.0938443990808046,
                           0.0911738786957639, 0.0876520930044038, 0.0833119242269467,
                           0.0781938957870703, 0.0723457941088485, 0.0658222227763618,
                           0.0586840934785355, 0.0509980592623762, 0.0428358980222267,
                           0.0342738629130214, 0.0253920653092621, 0.0162743947309057,
                           0.0070186100094701};
const double gl8_x[4] = {0.1834346424956498, 0.5255324099163290, 0.7966664774136267,
                         0.9602898564975363};
const double gl8_w[4] = {0.3626837833783620, 0.3137066458778873, 0.2223810344533745,
                         0.1012285362903763};
}  // namespace

double gauss_legendre(const std::function<double(double)>& f, double a, double b, int order) {
    const double* xs;
    const double* ws;
    int half;
    if (order <= 8) {
        xs = gl8_x; ws = gl8_w; half = 4;
    } else if (order <= 16) {
        xs = gl16_x; ws = gl16_w; half = 8;
    } else {
        xs = gl32_x; ws = gl32_w; half = 16;
    }
    double c = 0.5 * (a + b), h = 0.5 * (b - a);
    double s = 0;
    for (int i = 0; i < half; ++i)
        s += ws[i] * (f(c - h * xs[i]) + f(c + h * xs[i]));
    return s * h;
}

double brent_root(const std::function<double(double)>& f, double a, double b, double xtol,
                  int max_iter) {
    double fa = f(a), fb = f(b);
    if (fa == 0) return a;
    if (fb == 0) return b;
    if (fa * fb > 0) throw NumericError("brent_root: endpoints do not bracket a root");
    if (std::abs(fa) < std::abs(fb)) {
        std::swap(a, b);
        std::swap(fa, fb);
    }
    double c = a, fc = fa, d = b - a, e = d;
    for (int it = 0; it < max_iter; ++it) {
        if (std::abs(fc) < std::abs(fb)) {
            a = b; b = c; c = a;
            fa = fb; fb = fc; fc = fa;
        }
        double tol1 = 2 * std::numeric_limits<double>::epsilon() * std::abs(b) + 0.5 * xtol;
        double xm = 0.5 * (c - b);
        if (std::abs(xm) <= tol1 || fb == 0) return b;
        if (std::abs(e) >= tol1 && std::abs(fa) > std::abs(fb)) {
            double s = fb / fa, p, q;
            if (a == c) {
                p = 2 * xm * s;
                q = 1 - s;
            } else {
                double qq = fa / fc, r = fb / fc;
                p = s * (2 * xm * qq * (qq - r) - (b - a) * (r - 1));
                q = (qq - 1) * (r - 1) * (s - 1);
            }
            if (p > 0) q = -q;
            p = std::abs(p);
            if (2 * p < std::min(3 * xm * q - std::abs(tol1 * q), std::abs(e * q))) {
                e = d;
                d = p / q;
            } else {
                d = xm;
                e = d;
            }
        } else {
            d = xm;
            e = d;
        }
        a = b;
        fa = fb;
        b += (std::abs(d) > tol1) ? d : (xm > 0 ? tol1 : -tol1);
        fb = f(b);
        if ((fb > 0) == (fc > 0)) {
            c = a;
            fc = fa;
            d = b - a;
            e = d;
        }
    }
    return b;
}

double golden_max(const std::function<double(double)>& f, double a, double b, double xtol) {
    const double invphi = (std::sqrt(5.0) - 1) / 2;
    double x1 = b - invphi * (b - a), x2 = a + invphi * (b - a);
    double f1 = f(x1), f2 = f(x2);
    while (b - a > xtol) {
        if (f1 < f2) {
            a = x1; x1 = x2; f1 = f2;
            x2 = a + invphi * (b - a);
            f2 = f(x2);
        } else {
            b = x2; x2 = x1; f2 = f1;
            x1 = b - invphi * (b - a);
            f1 = f(x1);
        }
    }
    return 0.5 * (a + b);
}

Vec minimize_convex(const std::function<double(const Vec&)>& f,
                    const std::function<Vec(const Vec&)>* grad, Vec x, double tol, int max_iter) {
    int n = static_cast<int>(x.size());
    if (grad) {
        // gradient descent with backtracking; adequate for the smooth convex
        // functions used here
        double step = 1.0;
        for (int it = 0; it < max_iter; ++it) {
            Vec g = (*grad)(x);
            double gn = norm(g);
            if (gn < tol) break;
            double fx = f(x);
            double s = step;
            while (s > 1e-16) {
                Vec y = x - s * g;
                if (f(y) < fx - 0.25 * s * gn * gn) {
                    x = y;
                    step = std::min(4.0, s * 2);
                    break;
                }
                s *= 0.5;
            }
            if (s <= 1e-16) break;
        }
        return x;
    }
    // compass search
    double h = 1.0;
    double fx = f(x);
    while (h > tol) {
        bool improved = false;
        for (int i = 0; i < n; ++i) {
            for (double sgn : {1.0, -1.0}) {
                Vec y = x;
                y[i] += sgn * h;
                double fy = f(y);
                if (fy < fx) {
                    x = y;
                    fx = fy;
                    improved = true;
                }
            }
        }
        if (!improved) h *= 0.5;
    }
    return x;
}

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

double CounterRng::uniform(std::uint64_t i) const {
    std::uint64_t h = splitmix64(seed ^ splitmix64(i));
    return (h >> 11) * 0x1.0p-53;
}

double CounterRng::uniform(std::uint64_t i, std::uint64_t slot, double lo, double hi) const {
    std::uint64_t h = splitmix64(seed ^ splitmix64(i * 0x9e3779b97f4a7c15ULL + slot));
    return lo + (hi - lo) * ((h >> 11) * 0x1.0p-53);
}

}  // namespace floatlab
