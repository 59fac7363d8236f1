#pragma once

#include "floatlab/numerics.hpp"

namespace floatlab {

// Strictly positive weight function on the ambient space of a floating
// construction. The exponential-height kind depends only on the last
// coordinate; the rotational kind depends on (x, ||y||) where y spans the
// last `rot_s` coordinates.
struct Weight {
    enum class Kind { Constant, ExpHeight, Rotational, Custom };

    int ambient_dim = 0;
    Kind kind = Kind::Constant;
    double eta = 1.0;  // constant value; for custom, the declared lower bound (0 = none)
    int rot_s = 1;
    std::function<double(const Vec&)> phi;  // rotational: phi(x, r); custom: full oracle
    bool continuous = true;

    static Weight constant(int dim, double eta);
    static Weight exp_height(int dim);
    static Weight rotational(int dim, int s, std::function<double(const Vec&)> phi);
    static Weight custom(int dim, std::function<double(const Vec&)> oracle, double eta_lower);

    void validate() const;
};

double weight_eval(const Weight& w, const Vec& z);

// Closed-form inner integral for the exponential-height weight on [a,b].
double exp_height_segment_mass(double a, double b);

}  // namespace floatlab
