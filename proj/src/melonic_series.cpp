#include "melonrg/melonic_series.hpp"

#include <cmath>
#include <stdexcept>

namespace melonrg {

Integer catalan(unsigned long n) {
    Integer b;
    mpz_bin_uiui(b.get_mpz_t(), 2 * n, n);
    Integer out = b / (n + 1);
    return out;
}

Integer sigma_gf_coefficient(unsigned long n) {
    if (n < 1) throw std::invalid_argument("sigma_gf_coefficient requires n >= 1");
    return integer_pow(Integer(5), n - 1) * catalan(n - 1);
}

PowerSeries sigma_gf_series(std::size_t order) {
    PowerSeries s(order);
    if (order >= 1) s[1] = 1;
    for (std::size_t n = 2; n <= order; ++n) {
        Rational acc(0);
        for (std::size_t k = 1; k < n; ++k) acc += s[k] * s[n - k];
        s[n] = acc * 5;
    }
    return s;
}

PowerSeries gamma4_gf_series(std::size_t order) {
    PowerSeries s = sigma_gf_series(order);
    PowerSeries x = PowerSeries::identity(order);
    PowerSeries one = PowerSeries::constant(1, order);
    PowerSeries num = x * (one - x * 5 - s * 5);
    PowerSeries den = one - x * 6 - s * 5;
    return num * den.reciprocal();
}

Integer gamma4_gf_coefficient(unsigned long n) {
    if (n < 1) throw std::invalid_argument("gamma4_gf_coefficient requires n >= 1");
    PowerSeries g = gamma4_gf_series(n);
    Rational c = g[n];
    if (c.get_den() != 1)
        throw std::logic_error("gamma4 coefficient is not an integer");
    return c.get_num();
}

double gamma4_asymptotic(unsigned long n) {
    return std::pow(20.0, static_cast<double>(n)) /
           (64.0 * std::sqrt(M_PI * static_cast<double>(n) * n * n));
}

double gamma4_asymptotic_ratio(unsigned long n) {
    Rational scaled = Rational(gamma4_gf_coefficient(n)) /
                      Rational(integer_pow(Integer(20), n));
    double tail = 64.0 * std::sqrt(M_PI * static_cast<double>(n) * n * n);
    return to_double(scaled) * tail;
}

namespace {

// Counts Dyck words of length 2e by explicit backtracking over the +-1 steps.
void count_dyck(unsigned long height, unsigned long remaining, Integer& count) {
    if (remaining == 0) {
        if (height == 0) count += 1;
        return;
    }
    if (height > remaining) return;
    count_dyck(height + 1, remaining - 1, count);
    if (height > 0) count_dyck(height - 1, remaining - 1, count);
}

}  // namespace

Integer enumerate_melonic_2pt(unsigned long n) {
    if (n < 1 || n > 12)
        throw std::invalid_argument("enumerate_melonic_2pt requires 1 <= n <= 12");
    Integer trees(0);
    count_dyck(0, 2 * (n - 1), trees);
    return trees * integer_pow(Integer(5), n - 1);
}

}  // namespace melonrg
