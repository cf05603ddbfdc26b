#include "doctest.h"

#include "melonrg/melonic_series.hpp"
#include "melonrg/power_series.hpp"

#include <cmath>

using namespace melonrg;

TEST_CASE("catalan numbers") {
    CHECK(catalan(0) == 1);
    CHECK(catalan(1) == 1);
    CHECK(catalan(2) == 2);
    CHECK(catalan(3) == 5);
    CHECK(catalan(4) == 14);
    CHECK(catalan(10) == 16796);
    CHECK(catalan(30) == Integer("3814986502092304"));
}

TEST_CASE("two point coefficients equal the brute force enumeration") {
    for (unsigned long n = 1; n <= 8; ++n)
        CHECK(sigma_gf_coefficient(n) == enumerate_melonic_2pt(n));
    CHECK(sigma_gf_coefficient(1) == 1);
    CHECK(sigma_gf_coefficient(2) == 5);
    CHECK(sigma_gf_coefficient(3) == 50);
    CHECK(sigma_gf_coefficient(4) == 625);
}

TEST_CASE("two point series solves its quadratic exactly") {
    const std::size_t order = 40;
    PowerSeries S = sigma_gf_series(order);
    PowerSeries x = PowerSeries::identity(order);
    PowerSeries lhs = (S * S) * Rational(5) - S + x;
    CHECK(lhs.is_zero());
    // closed form via the square root branch: S = (1 - sqrt(1 - 20 x)) / 10
    PowerSeries one = PowerSeries::constant(Rational(1), order);
    PowerSeries root = (one - x * Rational(20)).sqrt_one();
    PowerSeries closed = (one - root) * make_rational(1, 10);
    CHECK(S == closed);
}

TEST_CASE("four point series matches its algebraic definition and known heads") {
    const std::size_t order = 40;
    PowerSeries S = sigma_gf_series(order);
    PowerSeries x = PowerSeries::identity(order);
    PowerSeries one = PowerSeries::constant(Rational(1), order);
    PowerSeries G = gamma4_gf_series(order);
    // (1 - 6x - 5S) G == x (1 - 5x - 5S)
    PowerSeries lhs = (one - x * Rational(6) - S * Rational(5)) * G;
    PowerSeries rhs = x * (one - x * Rational(5) - S * Rational(5));
    CHECK(lhs == rhs);
    CHECK(G[0] == 0);
    CHECK(gamma4_gf_coefficient(1) == 1);
    CHECK(gamma4_gf_coefficient(2) == 1);
    CHECK(gamma4_gf_coefficient(3) == 11);
    CHECK(gamma4_gf_coefficient(4) == 146);
    CHECK(gamma4_gf_coefficient(5) == 2131);
    for (unsigned long n = 1; n <= 20; ++n)
        CHECK(G[n] == Rational(gamma4_gf_coefficient(n)));
}

TEST_CASE("exact coefficients approach the asymptotic form from below") {
    // ratio exact/asymptotic climbs towards 1; the 1/n correction is negative
    double r20 = gamma4_asymptotic_ratio(20);
    double r50 = gamma4_asymptotic_ratio(50);
    double r100 = gamma4_asymptotic_ratio(100);
    CHECK(r20 > 0.9);
    CHECK(r20 < r50);
    CHECK(r50 < r100);
    CHECK(r100 < 1.0);
    CHECK(std::abs(r100 - 1.0) < 0.05);
    // the asymptotic evaluator itself stays finite and positive out to n = 100
    CHECK(gamma4_asymptotic(100) > 0.0);
    CHECK(std::isfinite(gamma4_asymptotic(100)));
}
