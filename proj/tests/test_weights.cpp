#include "doctest.h"
#include "floatlab/weights.hpp"

#include <cmath>

using namespace floatlab;

TEST_SUITE_BEGIN("weights");

TEST_CASE("constant weight") {
    Weight w = Weight::constant(2, 3.5);
    CHECK(weight_eval(w, {0.1, -4.0}) == doctest::Approx(3.5));
    CHECK_THROWS(Weight::constant(2, 0.0));
}

TEST_CASE("exponential height weight") {
    Weight w = Weight::exp_height(2);
    CHECK(weight_eval(w, {7.0, 0.0}) == doctest::Approx(1.0));
    CHECK(weight_eval(w, {0.0, 2.0}) == doctest::Approx(std::exp(-2.0)));
}

TEST_CASE("rotational weight sees (x, |y|)") {
    Weight w = Weight::rotational(3, 2, [](const Vec& a) { return 1.0 + a[0] * a[0] + a[1]; });
    // z = (x, y1, y2), phi gets (x, sqrt(y1^2+y2^2))
    CHECK(weight_eval(w, {2.0, 3.0, 4.0}) == doctest::Approx(1.0 + 4.0 + 5.0));
}

TEST_CASE("custom weight must stay positive") {
    Weight w = Weight::custom(1, [](const Vec& z) { return z[0]; }, 0.0);
    CHECK(weight_eval(w, {2.0}) == doctest::Approx(2.0));
    CHECK_THROWS_WITH(weight_eval(w, {-1.0}), "invalid weight");
}

TEST_CASE("exp segment mass") {
    CHECK(exp_height_segment_mass(0, 1) == doctest::Approx(1 - std::exp(-1.0)));
    CHECK(exp_height_segment_mass(0, INFINITY) == doctest::Approx(1.0));
    CHECK(exp_height_segment_mass(-1, 1) == doctest::Approx(std::exp(1.0) - std::exp(-1.0)));
    CHECK_THROWS(exp_height_segment_mass(1, 0));
}

TEST_SUITE_END();
