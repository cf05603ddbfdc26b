#include "doctest.h"

#include "melonrg/cutoffs.hpp"
#include "melonrg/numerics.hpp"

#include <cmath>
#include <cstdint>
#include <vector>

using namespace melonrg;

namespace {

// Deterministic 64-bit mix for reproducible sample points.
double unit_sample(std::uint64_t i) {
    std::uint64_t x = i * 0x9E3779B97F4A7C15ull + 0xD1B54A32D192ED03ull;
    x ^= x >> 32;
    x *= 0xD6E8FEB86659FD93ull;
    x ^= x >> 32;
    return static_cast<double>(x >> 11) * 0x1.0p-53;
}

}  // namespace

TEST_CASE("plateau and support of the mollified step are exact") {
    CutoffFamily fam(2, 3);
    CHECK(fam.kappa(0.0) == 1.0);
    CHECK(fam.kappa(fam.a() - fam.eps()) == 1.0);
    CHECK(fam.kappa(0.5 * (fam.a() - fam.eps())) == 1.0);
    CHECK(fam.kappa(fam.a() + fam.eps()) == 0.0);
    CHECK(fam.kappa(2.0 * (fam.a() + fam.eps())) == 0.0);
    // strictly between 0 and 1 inside the mollified band
    double mid = fam.kappa(fam.a());
    CHECK(mid > 0.0);
    CHECK(mid < 1.0);
    // evenness
    CHECK(fam.kappa(-1.7) == fam.kappa(1.7));

    auto [lo, hi] = fam.h_support();
    CHECK(lo == (fam.a() - fam.eps()) / 4.0);
    CHECK(hi == fam.a() + fam.eps());
    CHECK(fam.h(lo) == 0.0);
    CHECK(fam.h(hi) == 0.0);
    CHECK(fam.h(0.5 * (fam.a() - fam.eps())) != 0.0);
}

TEST_CASE("slices telescope to the top cutoff and neighbours are the only overlaps") {
    for (int M : {2, 3}) {
        for (int jm : {0, 2, 4}) {
            CutoffFamily fam(M, jm);
            double span = (fam.a() + fam.eps()) * std::pow(M, 2 * jm) * 1.25;
            for (int i = 0; i < 1000; ++i) {
                double u = span * unit_sample(static_cast<std::uint64_t>(i) + 1);
                KahanSum s;
                for (int j = 0; j <= jm; ++j)
                    s.add(fam.eta(j, u));
                CHECK(std::abs(s.value() - fam.kappa_j(jm, u)) <= 1e-14);
                // tail identities
                CHECK(fam.eta_geq(0, u) == doctest::Approx(fam.kappa_j(jm, u)).epsilon(1e-15));
                CHECK(fam.eta_geq(jm + 1, u) == 0.0);
                for (int j = 1; j <= jm; ++j) {
                    double tail = fam.kappa_j(jm, u) - fam.kappa_j(j - 1, u);
                    CHECK(std::abs(fam.eta_geq(j, u) - tail) <= 1e-14);
                }
                // non-adjacent slices have disjoint supports
                for (int i1 = 0; i1 <= jm; ++i1)
                    for (int j1 = i1 + 2; j1 <= jm; ++j1)
                        CHECK(fam.eta(i1, u) * fam.eta(j1, u) == 0.0);
            }
        }
    }
}

TEST_CASE("slice profiles are the rescaled single-slice shape") {
    CutoffFamily fam(2, 4);
    for (int i = 0; i < 200; ++i) {
        double u = 80.0 * unit_sample(static_cast<std::uint64_t>(i) + 7);
        for (int j = 1; j <= 4; ++j) {
            double scaled = fam.h(u / std::pow(4.0, j));
            CHECK(std::abs(fam.eta(j, u) - scaled) <= 1e-14);
        }
    }
}

TEST_CASE("profile derivative matches the two-bump closed form and finite differences") {
    CutoffFamily fam(2, 2);
    auto fd = [&](double u) {
        double d = 1e-6;
        return (fam.kappa(u + d) - fam.kappa(u - d)) / (2.0 * d);
    };
    for (double u : {1.2, 2.0, 2.5, 3.1, 3.9}) {
        CHECK(std::abs(fam.kappa_prime(u) - (fam.mollifier(u + fam.a()) - fam.mollifier(u - fam.a()))) <= 1e-15);
        CHECK(std::abs(fam.kappa_prime(u) - fd(u)) <= 1e-6);
    }
    // flat regions differentiate to exactly zero
    CHECK(fam.kappa_prime(0.3) == 0.0);
    CHECK(fam.kappa_prime(5.0) == 0.0);
    // slice derivative chain rule
    for (double u : {1.7, 4.4, 9.0}) {
        double d = 1e-6;
        double fd_eta = (fam.eta(1, u + d) - fam.eta(1, u - d)) / (2.0 * d);
        CHECK(std::abs(fam.eta_prime(1, u) - fd_eta) <= 1e-5);
    }
}

TEST_CASE("mollifier has unit mass and compact support") {
    CutoffFamily fam(2, 0);
    double eps = fam.eps();
    double mass = integrate_adaptive([&](double x) { return fam.mollifier(x); },
                                     -eps, eps, 1e-12, 1e-14);
    CHECK(std::abs(mass - 1.0) <= 1e-10);
    CHECK(fam.mollifier(eps) == 0.0);
    CHECK(fam.mollifier(-eps) == 0.0);
    CHECK(fam.mollifier(1.001 * eps) == 0.0);
    CHECK(fam.mollifier(0.0) > 0.0);
}

TEST_CASE("momentum bound is the largest weighted integer square") {
    CutoffFamily fam(2, 2);
    long n = fam.momentum_bound();
    double top = std::pow(2.0, 2.0 * 2.0);  // M^{2 j_max}
    CHECK(fam.kappa_j(2, static_cast<double>(n) * static_cast<double>(n) / 1.0) ==
          fam.kappa(static_cast<double>(n) * static_cast<double>(n) / top));
    CHECK(static_cast<double>(n) * n <= (fam.a() + fam.eps()) * top);
    CHECK(static_cast<double>(n + 1) * (n + 1) > (fam.a() + fam.eps()) * top);
}
