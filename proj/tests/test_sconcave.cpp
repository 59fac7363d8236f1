#include "doctest.h"
#include "floatlab/sconcave.hpp"

#include <cmath>

using namespace floatlab;

TEST_SUITE_BEGIN("sconcave");

namespace {
SConcaveFunction cap1(int s) {
    // f = (1 - x^2)^s on [-1, 1]
    return SConcaveFunction::from_concave(
        1, s, [](const Vec& x) { return 1 - x[0] * x[0]; }, ConvexBody::ball({0.0}, 1.0));
}
QuadratureSpec quad() {
    QuadratureSpec q;
    q.abs_tol = 1e-9;
    q.rel_tol = 1e-8;
    return q;
}
}  // namespace

TEST_CASE("construction and validation") {
    SConcaveFunction f = cap1(1);
    CHECK(f({0.0}) == doctest::Approx(1.0));
    CHECK(f({0.5}) == doctest::Approx(0.75));
    CHECK(f({1.5}) == 0.0);  // outside the support
    CHECK(f.root_gradient({0.5})[0] == doctest::Approx(-1.0).epsilon(1e-7));
    CHECK(f.root_hessian({0.25})(0, 0) == doctest::Approx(-2.0).epsilon(1e-5));

    SConcaveFunction f2 = cap1(2);
    CHECK(f2({0.5}) == doctest::Approx(0.5625));

    // convex root rejected
    CHECK_THROWS_WITH(SConcaveFunction::from_concave(
                          1, 1, [](const Vec& x) { return 0.1 + x[0] * x[0]; },
                          ConvexBody::ball({0.0}, 1.0)),
                      "s-concave: root fails midpoint concavity");
    // everywhere nonpositive rejected
    CHECK_THROWS(SConcaveFunction::from_concave(
        1, 1, [](const Vec&) { return -1.0; }, ConvexBody::ball({0.0}, 1.0)));
}

TEST_CASE("lift body membership and volume identity") {
    SConcaveFunction f = cap1(1);
    ConvexBody K = lift_body(f);
    CHECK(K.dim == 2);
    CHECK(membership(K, {0.0, 0.0}));
    CHECK(membership(K, {0.0, 0.99}));
    CHECK(!membership(K, {0.0, 1.5}));
    CHECK(!membership(K, {1.2, 0.0}));
    CHECK(membership(K, {0.5, 0.74}));
    CHECK(!membership(K, {0.5, 0.76}));
    // vol_2(K_f^1) = vol_1(B^1) * \int f = 2 * 4/3
    CHECK(body_volume(K, quad()) == doctest::Approx(8.0 / 3).epsilon(1e-4));

    SConcaveFunction f2 = cap1(2);
    ConvexBody K2 = lift_body(f2);
    CHECK(K2.dim == 3);
    CHECK(membership(K2, {0.5, 0.5, 0.5}));   // |y| = 0.707 < 0.75
    CHECK(!membership(K2, {0.5, 0.6, 0.6}));  // |y| = 0.849 > 0.75
    // vol_3(K_f^2) = pi * \int (1-x^2)^2 = 16 pi / 15
    CHECK(body_volume(K2, quad()) == doctest::Approx(16 * M_PI / 15).epsilon(2e-3));
}

TEST_CASE("floating function, s = 1") {
    SConcaveFunction f = cap1(1);
    Weight one = Weight::constant(2, 1.0);
    DirectionGrid grid = DirectionGrid::circle(256);
    double delta = 1e-2;
    SConcaveFloating fd = sconcave_floating_function(f, one, delta, grid, quad());

    CHECK(fd({0.0}) < 1.0);
    CHECK(fd({0.0}) > 0.9);
    // even in x, dominated by f, vanishing outside
    for (double x : {0.1, 0.3, 0.6, 0.85}) {
        CHECK(fd({x}) == doctest::Approx(fd({-x})).epsilon(1e-6));
        CHECK(fd({x}) <= f({x}) + 1e-9);
    }
    CHECK(fd({1.2}) == 0.0);

    // monotone nonincreasing in delta at probes
    SConcaveFloating fd2 = sconcave_floating_function(f, one, 4 * delta, grid, quad());
    for (double x : {0.0, 0.4, 0.8}) CHECK(fd2({x}) <= fd({x}) + 1e-9);

    // delta = 0 gives f back (slice radius of the lift itself)
    SConcaveFloating f0 = sconcave_floating_function(f, one, 0.0, grid, quad());
    for (double x : {0.0, 0.33, 0.7}) CHECK(f0({x}) == doctest::Approx(f({x})).epsilon(1e-9));

    // root of the floating function passes midpoint concavity spot checks
    for (double x : {0.1, 0.25, 0.45}) {
        double a = fd({x - 0.1}), b = fd({x + 0.1});
        CHECK(fd({x}) >= 0.5 * (a + b) - 1e-9);
    }
}

TEST_CASE("slice radius agrees with the direct slice route, s = 2") {
    SConcaveFunction f2 = cap1(2);
    Weight one = Weight::constant(3, 1.0);
    SConcaveFloating f0 =
        sconcave_floating_function(f2, one, 0.0, DirectionGrid::sphere(64), quad());
    // at delta = 0 the slice of the lift at x is the disk of radius f^{1/2}(x)
    for (double x : {0.0, 0.4, 0.8}) {
        double rho = f0.slice_radius({x});
        CHECK(rho == doctest::Approx(std::sqrt(f2({x}))).epsilon(1e-6));
        CHECK(f0({x}) == doctest::Approx(f2({x})).epsilon(1e-6));
    }
}

TEST_CASE("deficit and the lifted-volume identity") {
    SConcaveFunction f = cap1(1);
    Weight one = Weight::constant(2, 1.0);
    DirectionGrid grid = DirectionGrid::circle(256);
    SConcaveFloating f0 = sconcave_floating_function(f, one, 0.0, grid, quad());
    CHECK(sconcave_deficit(f, f0, quad()) == doctest::Approx(0.0).epsilon(1e-8));

    double delta = 1e-2;
    SConcaveFloating fd = sconcave_floating_function(f, one, delta, grid, quad());
    double def = sconcave_deficit(f, fd, quad());
    CHECK(def > 0);
    // deficit = (vol(K_f^1) - vol(floating body)) / vol_1(B^1)
    double volK = body_volume(lift_body(f), quad());
    double volF = body_volume(fd.body.polytope, quad());
    CHECK(def == doctest::Approx((volK - volF) / 2).epsilon(1e-4));

    SConcaveFloating fd2 = sconcave_floating_function(f, one, 4 * delta, grid, quad());
    CHECK(sconcave_deficit(f, fd2, quad()) >= def);
}

TEST_SUITE_END();
