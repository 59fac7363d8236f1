#include "floatlab/weights.hpp"

#include <cmath>

namespace floatlab {

Weight Weight::constant(int dim, double eta) {
    if (eta <= 0) throw NumericError("constant weight requires eta > 0");
    Weight w;
    w.ambient_dim = dim;
    w.kind = Kind::Constant;
    w.eta = eta;
    return w;
}

Weight Weight::exp_height(int dim) {
    Weight w;
    w.ambient_dim = dim;
    w.kind = Kind::ExpHeight;
    w.eta = 0.0;  // no uniform lower bound
    return w;
}

Weight Weight::rotational(int dim, int s, std::function<double(const Vec&)> phi) {
    if (s < 1 || s >= dim + 1) throw NumericError("rotational weight: invalid s");
    Weight w;
    w.ambient_dim = dim;
    w.kind = Kind::Rotational;
    w.rot_s = s;
    w.phi = std::move(phi);
    w.eta = 0.0;
    return w;
}

Weight Weight::custom(int dim, std::function<double(const Vec&)> oracle, double eta_lower) {
    if (eta_lower < 0) throw NumericError("custom weight: lower bound must be >= 0");
    Weight w;
    w.ambient_dim = dim;
    w.kind = Kind::Custom;
    w.phi = std::move(oracle);
    w.eta = eta_lower;
    return w;
}

void Weight::validate() const {
    if (ambient_dim < 1) throw NumericError("weight: ambient dimension must be >= 1");
    if (kind == Kind::Constant && eta <= 0) throw NumericError("constant weight requires eta > 0");
    if ((kind == Kind::Rotational || kind == Kind::Custom) && !phi)
        throw NumericError("weight: missing oracle");
}

double weight_eval(const Weight& w, const Vec& z) {
    if (static_cast<int>(z.size()) != w.ambient_dim)
        throw NumericError("weight_eval: dimension mismatch");
    double v;
    switch (w.kind) {
        case Weight::Kind::Constant:
            v = w.eta;
            break;
        case Weight::Kind::ExpHeight:
            v = std::exp(-z.back());
            break;
        case Weight::Kind::Rotational: {
            int n = w.ambient_dim - w.rot_s;
            double r2 = 0;
            for (int i = n; i < w.ambient_dim; ++i) r2 += z[i] * z[i];
            Vec arg(z.begin(), z.begin() + n);
            arg.push_back(std::sqrt(r2));
            v = w.phi(arg);
            break;
        }
        case Weight::Kind::Custom:
            v = w.phi(z);
            break;
        default:
            throw NumericError("weight_eval: unknown kind");
    }
    if (!(v > 0)) throw NumericError("invalid weight");
    return v;
}

double exp_height_segment_mass(double a, double b) {
    if (a > b) throw NumericError("exp_height_segment_mass requires a <= b");
    if (std::isinf(b)) return std::exp(-a);
    // stable form of e^{-a} - e^{-b}
    return std::exp(-a) * -std::expm1(-(b - a));
}

}  // namespace floatlab
