#pragma once

#include "melonrg/power_series.hpp"
#include "melonrg/rational.hpp"

namespace melonrg {

// Catalan number C_n = binomial(2n, n)/(n+1).
Integer catalan(unsigned long n);

// Coefficient of x^n in the melonic two-point generating function:
// 5^(n-1) * C_{n-1}, for n >= 1.
Integer sigma_gf_coefficient(unsigned long n);

// The melonic two-point generating function S(x) = sum_{n>=1} 5^(n-1) C_{n-1} x^n,
// the unique power-series solution of 5 S^2 - S + x = 0, computed by the
// quadratic recursion s_n = 5 sum_{k=1}^{n-1} s_k s_{n-k}.
PowerSeries sigma_gf_series(std::size_t order);

// The monochrome four-point generating function
//   G(x) = x (1 - 5x - 5 S(x)) / (1 - 6x - 5 S(x)),
// as an exact rational power series. Coefficients start 1, 1, 11, 146, ...
PowerSeries gamma4_gf_series(std::size_t order);

Integer gamma4_gf_coefficient(unsigned long n);

// Leading-order large-n approximation 20^n / (64 sqrt(pi n^3)).
double gamma4_asymptotic(unsigned long n);

// Ratio of the exact coefficient to the asymptotic form, evaluated in exact
// rational arithmetic before the final conversion (20^n overflows naive
// floating-point pipelines long before n = 100).
double gamma4_asymptotic_ratio(unsigned long n);

// Brute-force count of melonic two-point graphs of order n: explicit
// enumeration of rooted plane trees with n-1 edges (Dyck words, counted by
// backtracking) times the exact colour factor 5^(n-1). Valid for 1 <= n <= 12.
Integer enumerate_melonic_2pt(unsigned long n);

}  // namespace melonrg
