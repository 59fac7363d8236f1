#pragma once

#include "floatlab/convex_function.hpp"
#include "floatlab/sconcave.hpp"

#include <string>

namespace floatlab {

struct ASAResult {
    double value = 0;
    std::string tag;    // as_p, as_phi, as_phie, as_lambda, as_s_phi, as_s_lambda
    double param = 0;   // p or lambda where applicable
    double error_estimate = 0;
};

// Normalization constants in front of the affine surface areas:
//   BodyN      c_n     = 1/2 ((n+1)/vol_{n-1}(B^{n-1}))^{2/(n+1)}
//   FuncN1     c_{n+1} = 1/2 ((n+2)/vol_n(B^n))^{2/(n+2)}
//   SconcaveNS c_{n,s} = s/2 ((n+s+1)/vol_{n+s-1}(B^{n+s-1}))^{2/(n+s+1)}
enum class CKind { BodyN, FuncN1, SconcaveNS };
double constant_c(CKind kind, int n, int s = 1);

// L_p-affine surface area of a smooth body with the origin in its interior:
// \int_{\partial K} kappa^{p/(n+p)} / <z,N>^{n(p-1)/(n+p)} dmu.
ASAResult asa_body_p(const ConvexBody& body, double p, const QuadratureSpec& quad);

// Same for the 2-D revolution body {(x,y): |y| <= f(x)} of a 1-concave
// profile, integrating along the two graph arcs (corners carry no as_p mass
// for p > 0).
ASAResult asa_profile_p(const SConcaveFunction& f, double p, const QuadratureSpec& quad);

// \int (det D2 psi)^{1/(n+2)} Phi(x,psi(x))^{-2/(n+2)} e^{-psi} dx
ASAResult asa_weighted(const ConvexFunction& psi, const Weight& w, const QuadratureSpec& quad);

// \int (det D2 psi)^{1/(n+2)} e^{-(n/(n+2)) psi} dx
ASAResult asa_exponential(const ConvexFunction& psi, const QuadratureSpec& quad);

// \int e^{(2 lambda - 1) psi - lambda <x, grad psi>} (det D2 psi)^lambda dx
ASAResult asa_lambda(const ConvexFunction& psi, double lambda, const QuadratureSpec& quad);

// \int |det D2 f^{1/s}|^{1/(n+s+1)} f^{(s-1)(n+s)/(s(n+s+1))}
//      phi(x, f^{1/s})^{-2/(n+s+1)} dx over supp f
ASAResult asa_sconcave(const SConcaveFunction& f, const Weight& phi, const QuadratureSpec& quad);

// lambda-affine surface area of an s-concave function, via the convex
// associate psi_f = s(1 - f^{1/s}) with prefactor 1/(1+ns).
ASAResult asa_lambda_sconcave(const SConcaveFunction& f, double lambda,
                              const QuadratureSpec& quad);

// lhs = asa_exponential of ||.||_K^2/2;
// rhs = (1+2/n)^{n/2} (2 pi)^{n/2} / (n vol_n(B^n)) * as_{n/(n+1)}(K)
std::pair<double, double> gauge_identity_check(const ConvexBody& K, const QuadratureSpec& quad);

}  // namespace floatlab
