#include "doctest.h"

#include "melonrg/flow.hpp"
#include "melonrg/normal_form.hpp"

#include <cmath>
#include <complex>
#include <cstdint>
#include <stdexcept>
#include <vector>

using namespace melonrg;

namespace {

double unit_sample(std::uint64_t i) {
    std::uint64_t x = i * 0x9E3779B97F4A7C15ull + 0xD1B54A32D192ED03ull;
    x ^= x >> 32;
    x *= 0xD6E8FEB86659FD93ull;
    x ^= x >> 32;
    return static_cast<double>(x >> 11) * 0x1.0p-53;
}

// Polar-uniform point inside the domain: direction theta, radius a uniform
// fraction of the boundary radius.
Complex domain_point(const DomainSpec& d, std::uint64_t i) {
    double theta = -M_PI + 2.0 * M_PI * unit_sample(2 * i + 1);
    double r = domain_radius(d, theta) * unit_sample(2 * i + 2);
    return std::polar(r, theta);
}

}  // namespace

TEST_CASE("quadratic flow: integrator agrees with the closed form") {
    FlowProblem fp;
    fp.beta2 = -1.0;
    fp.g_r = Complex(0.08, 0.05);
    Trajectory traj = integrate(fp, 100.0, 1e-12);
    CHECK(traj.samples.front().t == 0.0);
    CHECK(traj.samples.front().g == fp.g_r);
    CHECK_FALSE(traj.escaped);
    double worst = 0.0;
    for (const auto& s : traj.samples)
        worst = std::max(worst, std::abs(s.g - quadratic_exact(fp.beta2, fp.g_r, s.t)));
    CHECK(worst <= 1e-8);
}

TEST_CASE("quadratic closed form throws at the real negative pole") {
    CHECK_THROWS_AS(quadratic_exact(-1.0, Complex(-0.5, 0.0), 2.0), std::domain_error);
    // just off the pole it is finite
    CHECK(std::isfinite(std::abs(quadratic_exact(-1.0, Complex(-0.5, 1e-12), 2.0))));
}

TEST_CASE("integrator reports escape for orbits running into the pole") {
    FlowProblem fp;
    fp.beta2 = -1.0;
    fp.g_r = Complex(-0.5, 0.0);  // pole at t = 2
    Trajectory traj = integrate(fp, 3.0, 1e-10, 1e3);
    CHECK(traj.escaped);
    CHECK(traj.escape_time < 3.0);
    CHECK(traj.escape_time > 1.5);
}

TEST_CASE("grid evaluation matches trajectory integration") {
    FlowProblem fp;
    fp.beta2 = -1.0;
    fp.beta3 = 0.3;
    fp.g_r = Complex(0.02, 0.01);
    std::vector<double> times = {0.5, 1.0, 5.0, 25.0, 100.0};
    std::vector<Complex> vals = integrate_grid(fp, times, 1e-12);
    REQUIRE(vals.size() == times.size());
    for (std::size_t i = 0; i < times.size(); ++i) {
        Trajectory t = integrate(fp, times[i], 1e-12);
        CHECK(std::abs(t.samples.back().g - vals[i]) <= 1e-9);
    }
}

TEST_CASE("sector domain is invariant for the quadratic flow") {
    DomainSpec d;  // Omega
    d.eps = 0.3;
    FlowProblem fp;
    fp.beta2 = -1.0;
    std::vector<double> times;
    for (int k = 1; k <= 40; ++k) times.push_back(0.25 * k * k);
    for (std::uint64_t i = 0; i < 200; ++i) {
        Complex z = domain_point(d, i + 1);
        for (double t : times) {
            Complex g = quadratic_exact(fp.beta2, z, t);
            CHECK(std::abs(g) <= d.eps * (1.0 + 1e-9));
            CHECK(domain_contains(d, g, 1e-9));
        }
    }
}

TEST_CASE("domain membership honors the boundary conventions") {
    DomainSpec omega{DomainKind::Omega, 0.2, 0.0};
    CHECK(domain_contains(omega, Complex(0.0, 0.0)));
    CHECK(domain_contains(omega, Complex(0.2, 0.0)));          // closed
    CHECK(domain_contains(omega, Complex(0.0, 0.2)));
    CHECK_FALSE(domain_contains(omega, Complex(0.2001, 0.0)));
    CHECK_FALSE(domain_contains(omega, Complex(-0.01, 0.0)));  // negative axis excluded
    CHECK(domain_contains(omega, Complex(-0.01, 0.1)));

    DomainSpec disk{DomainKind::Disk, 0.2, 0.0};
    CHECK(domain_contains(disk, Complex(0.19, 0.0)));
    CHECK_FALSE(domain_contains(disk, Complex(0.2, 0.0)));     // open

    DomainSpec ns{DomainKind::NSdisk, 0.2, 0.0};
    CHECK(domain_contains(ns, Complex(0.2, 0.0)));   // center
    CHECK(domain_contains(ns, Complex(0.39, 0.0)));
    CHECK_FALSE(domain_contains(ns, Complex(0.0, 0.0)));       // tangency point
    CHECK_FALSE(domain_contains(ns, Complex(0.4, 0.0)));       // far boundary
    CHECK_FALSE(domain_contains(ns, Complex(0.0, 0.1)));

    // cardioid is contained in the sector domain of the same size
    DomainSpec card{DomainKind::Cardioid, 0.2, 0.0};
    for (std::uint64_t i = 0; i < 300; ++i) {
        Complex z = domain_point(card, i + 11);
        CHECK(domain_contains(omega, z, 1e-12));
    }
}

TEST_CASE("admissibility thresholds follow the three closed form inequalities") {
    CHECK(eps_admissible(0.1, 0.3));
    CHECK_FALSE(eps_admissible(0.9, 1.0));
    double e = max_admissible_eps(0.3);
    CHECK(e == doctest::Approx(0.152558).epsilon(1e-4));
    CHECK(eps_admissible(e * 0.999, 0.3));
    CHECK_FALSE(eps_admissible(e * 1.001, 0.3));
    CHECK(std::isinf(max_admissible_eps(0.0)));  // unbounded without a cubic term

    CHECK(ns_disk_radius(0.06, 1.0) == doctest::Approx(0.007796).epsilon(1e-3));
}

TEST_CASE("cubic solution: implicit residual, special cases, imaginary sign") {
    FlowProblem fp;
    fp.beta2 = -1.0;
    fp.beta3 = 0.3;
    fp.g_r = Complex(0.05, 0.02);
    for (double t : {0.1, 1.0, 10.0, 100.0}) {
        CubicPhi cp = cubic_phi(fp, t);
        CHECK(cp.residual <= 1e-10);
        CHECK(std::abs(cp.phi) < 2.0 * M_PI);
        Complex g = cubic_solution(fp, t);
        CHECK(std::abs(g) <= std::abs(fp.g_r) * 1.5);
        CHECK(g.imag() > 0.0);  // upper half plane is preserved
    }
    // beta3 = 0 collapses to the quadratic closed form with phi identically 0
    FlowProblem q = fp;
    q.beta3 = 0.0;
    for (double t : {0.5, 7.0, 50.0}) {
        CHECK(cubic_phi(q, t).phi == Complex(0.0, 0.0));
        CHECK(std::abs(cubic_solution(q, t) - quadratic_exact(q.beta2, q.g_r, t)) <= 1e-14);
    }
    // nonzero higher coefficients are not a cubic problem
    FlowProblem bad = fp;
    bad.higher = {0.1};
    CHECK_THROWS_AS(cubic_phi(bad, 1.0), std::invalid_argument);
}

TEST_CASE("cubic closed form tracks the integrated cubic flow") {
    FlowProblem fp;
    fp.beta2 = -1.0;
    fp.beta3 = 0.3;
    double worst = 0.0;
    for (std::uint64_t i = 0; i < 25; ++i) {
        DomainSpec d{DomainKind::Omega, 0.13, 0.0};
        fp.g_r = domain_point(d, i + 3);
        if (std::abs(fp.g_r) < 1e-6) continue;
        std::vector<double> times = {1.0, 10.0, 100.0};
        std::vector<Complex> nums = integrate_grid(fp, times, 1e-12);
        for (std::size_t k = 0; k < times.size(); ++k)
            worst = std::max(worst, std::abs(nums[k] - cubic_solution(fp, times[k])));
    }
    CHECK(worst <= 1e-6);
}

TEST_CASE("real window boundary and the two sided comparison") {
    FlowProblem fp;
    fp.beta2 = -1.0;
    fp.beta3 = 0.4;
    fp.higher = {0.2};
    double gc = g_crit(fp);
    CHECK(gc == doctest::Approx(1.449490).epsilon(1e-5));

    fp.g_r = Complex(0.05, 0.0);
    std::vector<double> grid;
    for (int k = 1; k <= 100; ++k) grid.push_back(0.5 * k);
    SandwichReport rep = sandwich_check(fp, 0.5, grid);
    CHECK(rep.strict);
    CHECK(rep.min_lower_margin > 0.0);
    CHECK(rep.min_upper_margin > 0.0);

    // violated preconditions throw
    FlowProblem badg = fp;
    badg.g_r = Complex(2.0 * gc, 0.0);
    CHECK_THROWS_AS(sandwich_check(badg, 0.5, grid), std::invalid_argument);
    FlowProblem nob3 = fp;
    nob3.beta3 = 0.0;
    CHECK_THROWS_AS(sandwich_check(nob3, 0.5, grid), std::invalid_argument);
    FlowProblem big = fp;
    big.higher = {50.0};
    CHECK_THROWS_AS(sandwich_check(big, 0.5, grid), std::invalid_argument);
}

TEST_CASE("tangent to identity orbits decay at the parabolic rate") {
    // h(z) = z - z^2: n g_n tends to 1
    std::vector<Complex> orbit = discrete_iterate({0.0, 1.0, -1.0}, Complex(0.05, 0.0), 10000);
    REQUIRE(orbit.size() == 10001);
    double scaled = 10000.0 * orbit.back().real();
    CHECK(scaled > 0.95);
    CHECK(scaled < 1.05);
    CHECK(orbit.back().imag() == 0.0);

    // escape from the unit disk is an error
    CHECK_THROWS_AS(discrete_iterate({0.0, 1.0, 5.0}, Complex(0.9, 0.0), 100, 1.0),
                    std::runtime_error);
    // malformed jets are rejected
    CHECK_THROWS_AS(discrete_iterate({0.1, 1.0}, Complex(0.0, 0.0), 1), std::invalid_argument);
    CHECK_THROWS_AS(discrete_iterate({0.0, 0.5}, Complex(0.0, 0.0), 1), std::invalid_argument);
}

TEST_CASE("discrete time one map of the field matches the continuous flow") {
    // h = exp(X) id truncated to order 10, X = -z^2 + (3/10) z^3; at
    // |g_r| = 0.01 the truncation error sits far below the comparison tol.
    FlowProblem fp;
    fp.beta2 = -1.0;
    fp.beta3 = 0.3;
    fp.g_r = Complex(0.01, 0.0);
    PowerSeries X(10);
    X[2] = Rational(-1);
    X[3] = make_rational(3, 10);
    PowerSeries hj = vector_field_exp(X, 10);
    std::vector<double> h;
    for (std::size_t k = 0; k <= 10; ++k) h.push_back(to_double(hj[k]));
    std::vector<Complex> orbit = discrete_iterate(h, fp.g_r, 100);
    std::vector<double> times;
    for (int k = 1; k <= 100; ++k) times.push_back(static_cast<double>(k));
    std::vector<Complex> cont = integrate_grid(fp, times, 1e-13);
    double worst = 0.0;
    for (int k = 1; k <= 100; ++k)
        worst = std::max(worst, std::abs(orbit[static_cast<std::size_t>(k)] -
                                         cont[static_cast<std::size_t>(k - 1)]));
    CHECK(worst <= 1e-6);
}

TEST_CASE("invariant directions separate attracting and repelling rays") {
    // r = 1, a = -1: attracting along +1, repelling along -1
    InvariantDirections d1 = attracting_directions(Complex(-1.0, 0.0), 1);
    REQUIRE(d1.attracting.size() == 1);
    REQUIRE(d1.repelling.size() == 1);
    CHECK(std::abs(d1.attracting[0] - Complex(1.0, 0.0)) <= 1e-12);
    CHECK(std::abs(d1.repelling[0] - Complex(-1.0, 0.0)) <= 1e-12);

    // r = 3: six rays interleave and v^r a is real of the right sign
    Complex a(0.4, -0.7);
    InvariantDirections d3 = attracting_directions(a, 3);
    REQUIRE(d3.attracting.size() == 3);
    REQUIRE(d3.repelling.size() == 3);
    for (Complex v : d3.attracting) {
        Complex w = a * std::pow(v, 3);
        CHECK(std::abs(w.imag()) <= 1e-12);
        CHECK(w.real() < 0.0);
    }
    for (Complex v : d3.repelling) {
        Complex w = a * std::pow(v, 3);
        CHECK(std::abs(w.imag()) <= 1e-12);
        CHECK(w.real() > 0.0);
    }
}
