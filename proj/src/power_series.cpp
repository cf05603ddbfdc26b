#include "melonrg/power_series.hpp"

#include <algorithm>
#include <stdexcept>

namespace melonrg {

PowerSeries PowerSeries::constant(const Rational& value, std::size_t order) {
    PowerSeries s(order);
    s.c_[0] = value;
    return s;
}

PowerSeries PowerSeries::identity(std::size_t order) {
    if (order < 1) throw std::invalid_argument("identity series needs order >= 1");
    PowerSeries s(order);
    s.c_[1] = 1;
    return s;
}

PowerSeries PowerSeries::truncated(std::size_t order) const {
    std::vector<Rational> out(order + 1, Rational(0));
    for (std::size_t k = 0; k <= order && k < c_.size(); ++k) out[k] = c_[k];
    return PowerSeries(std::move(out));
}

PowerSeries PowerSeries::operator+(const PowerSeries& o) const {
    std::size_t n = std::min(c_.size(), o.c_.size());
    std::vector<Rational> out(n);
    for (std::size_t k = 0; k < n; ++k) out[k] = c_[k] + o.c_[k];
    return PowerSeries(std::move(out));
}

PowerSeries PowerSeries::operator-(const PowerSeries& o) const {
    std::size_t n = std::min(c_.size(), o.c_.size());
    std::vector<Rational> out(n);
    for (std::size_t k = 0; k < n; ++k) out[k] = c_[k] - o.c_[k];
    return PowerSeries(std::move(out));
}

PowerSeries PowerSeries::operator-() const {
    std::vector<Rational> out(c_.size());
    for (std::size_t k = 0; k < c_.size(); ++k) out[k] = -c_[k];
    return PowerSeries(std::move(out));
}

PowerSeries PowerSeries::operator*(const PowerSeries& o) const {
    std::size_t n = std::min(c_.size(), o.c_.size());
    std::vector<Rational> out(n, Rational(0));
    for (std::size_t i = 0; i < n; ++i) {
        if (c_[i] == 0) continue;
        for (std::size_t j = 0; i + j < n; ++j) {
            if (o.c_[j] == 0) continue;
            out[i + j] += c_[i] * o.c_[j];
        }
    }
    return PowerSeries(std::move(out));
}

PowerSeries PowerSeries::operator*(const Rational& s) const {
    std::vector<Rational> out(c_.size());
    for (std::size_t k = 0; k < c_.size(); ++k) out[k] = c_[k] * s;
    return PowerSeries(std::move(out));
}

PowerSeries PowerSeries::shifted(std::size_t k) const {
    std::vector<Rational> out(c_.size(), Rational(0));
    for (std::size_t i = 0; i + k < c_.size(); ++i) out[i + k] = c_[i];
    return PowerSeries(std::move(out));
}

PowerSeries PowerSeries::reciprocal() const {
    if (c_.empty() || c_[0] == 0)
        throw std::invalid_argument("reciprocal requires a nonzero constant term");
    std::size_t n = c_.size();
    std::vector<Rational> out(n, Rational(0));
    Rational inv0 = 1 / c_[0];
    out[0] = inv0;
    for (std::size_t k = 1; k < n; ++k) {
        Rational acc(0);
        for (std::size_t j = 1; j <= k; ++j) acc += c_[j] * out[k - j];
        out[k] = -inv0 * acc;
    }
    return PowerSeries(std::move(out));
}

PowerSeries PowerSeries::divided_by(const PowerSeries& o) const {
    return (*this) * o.reciprocal().truncated(std::min(order(), o.order()));
}

PowerSeries PowerSeries::compose(const PowerSeries& inner) const {
    if (inner.c_.empty() || inner.c_[0] != 0)
        throw std::invalid_argument("compose requires inner constant term zero");
    std::size_t n = std::min(c_.size(), inner.c_.size());
    PowerSeries acc(n - 1);
    // Horner evaluation: acc = c_m + inner*(c_{m+1} + inner*(...)).
    for (std::size_t m = n; m-- > 0;) {
        acc = acc * inner.truncated(n - 1);
        acc.c_[0] += c_[m];
    }
    return acc;
}

PowerSeries PowerSeries::sqrt_one() const {
    if (c_.empty() || c_[0] != 1)
        throw std::invalid_argument("sqrt_one requires constant term 1");
    std::size_t n = c_.size();
    std::vector<Rational> t(n, Rational(0));
    t[0] = 1;
    for (std::size_t k = 1; k < n; ++k) {
        Rational acc(0);
        for (std::size_t j = 1; j < k; ++j) acc += t[j] * t[k - j];
        t[k] = (c_[k] - acc) / 2;
    }
    return PowerSeries(std::move(t));
}

PowerSeries PowerSeries::log_scaled() const {
    if (c_.empty() || c_[0] == 0)
        throw std::invalid_argument("log_scaled requires a nonzero constant term");
    return (derivative() * reciprocal().truncated(order() == 0 ? 0 : order() - 1))
        .antiderivative()
        .truncated(order());
}

PowerSeries PowerSeries::exp_zero() const {
    if (c_.empty() || c_[0] != 0)
        throw std::invalid_argument("exp_zero requires constant term zero");
    std::size_t n = c_.size();
    std::vector<Rational> e(n, Rational(0));
    e[0] = 1;
    for (std::size_t k = 1; k < n; ++k) {
        Rational acc(0);
        for (std::size_t j = 1; j <= k; ++j) acc += Rational(static_cast<long>(j)) * c_[j] * e[k - j];
        e[k] = acc / static_cast<long>(k);
    }
    return PowerSeries(std::move(e));
}

PowerSeries PowerSeries::derivative() const {
    if (c_.size() <= 1) return PowerSeries(std::vector<Rational>{Rational(0)});
    std::vector<Rational> out(c_.size() - 1);
    for (std::size_t k = 1; k < c_.size(); ++k)
        out[k - 1] = c_[k] * static_cast<long>(k);
    return PowerSeries(std::move(out));
}

PowerSeries PowerSeries::antiderivative() const {
    std::vector<Rational> out(c_.size() + 1, Rational(0));
    for (std::size_t k = 0; k < c_.size(); ++k)
        out[k + 1] = c_[k] / static_cast<long>(k + 1);
    return PowerSeries(std::move(out));
}

bool PowerSeries::is_zero() const {
    for (const auto& x : c_)
        if (x != 0) return false;
    return true;
}

}  // namespace melonrg
