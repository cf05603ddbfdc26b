#pragma once

#include <vector>

#include "melonrg/rational.hpp"

namespace melonrg {

// Dense truncated power series over exact rationals. coeff[k] is the
// coefficient of x^k; the truncation order is size()-1. Binary operations
// truncate to the shorter operand. All arithmetic is exact.
class PowerSeries {
  public:
    PowerSeries() = default;
    explicit PowerSeries(std::size_t order) : c_(order + 1, Rational(0)) {}
    explicit PowerSeries(std::vector<Rational> coeffs) : c_(std::move(coeffs)) {}

    static PowerSeries constant(const Rational& value, std::size_t order);
    // The identity series x, truncated at `order`.
    static PowerSeries identity(std::size_t order);

    std::size_t order() const { return c_.empty() ? 0 : c_.size() - 1; }
    std::size_t size() const { return c_.size(); }

    const Rational& operator[](std::size_t k) const { return c_[k]; }
    Rational& operator[](std::size_t k) { return c_[k]; }
    const std::vector<Rational>& coeffs() const { return c_; }

    PowerSeries truncated(std::size_t order) const;

    PowerSeries operator+(const PowerSeries& o) const;
    PowerSeries operator-(const PowerSeries& o) const;
    PowerSeries operator-() const;
    PowerSeries operator*(const PowerSeries& o) const;
    PowerSeries operator*(const Rational& s) const;

    bool operator==(const PowerSeries& o) const { return c_ == o.c_; }

    // Multiplication by x^k (drops coefficients past the truncation order).
    PowerSeries shifted(std::size_t k) const;

    // 1/this; requires a nonzero constant term.
    PowerSeries reciprocal() const;
    PowerSeries divided_by(const PowerSeries& o) const;

    // this(inner); requires inner constant term zero.
    PowerSeries compose(const PowerSeries& inner) const;

    // Square root with constant term 1, by the quadratic recursion
    // t_n = (s_n - sum_{k=1}^{n-1} t_k t_{n-k}) / 2.
    PowerSeries sqrt_one() const;

    // log(this) - log(constant term); requires a nonzero constant term.
    // The result has constant term 0 and d/dx log = this'/this.
    PowerSeries log_scaled() const;

    // exp(this); requires constant term zero.
    PowerSeries exp_zero() const;

    PowerSeries derivative() const;
    // Term-by-term antiderivative with constant term 0, truncated at the
    // same order as the input.
    PowerSeries antiderivative() const;

    bool is_zero() const;

  private:
    std::vector<Rational> c_;
};

}  // namespace melonrg
