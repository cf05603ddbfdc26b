#include "melonrg/normal_form.hpp"

#include <stdexcept>

namespace melonrg {

namespace {

PowerSeries padded(const PowerSeries& s, std::size_t order) {
  PowerSeries out(order);
  const std::size_t n = std::min(s.size(), out.size());
  for (std::size_t k = 0; k < n; ++k) out[k] = s[k];
  return out;
}

// Field series for beta2 z^2 + beta3 z^3 + sum_k higher[k] z^{k+4}.
PowerSeries field_series(const Rational& beta2, const Rational& beta3,
                         const std::vector<Rational>& higher,
                         std::size_t order) {
  PowerSeries f(order);
  if (order >= 2) f[2] = beta2;
  if (order >= 3) f[3] = beta3;
  for (std::size_t k = 0; k < higher.size() && k + 4 <= order; ++k)
    f[k + 4] = higher[k];
  return f;
}

}  // namespace

PowerSeries vector_field_exp(const PowerSeries& field, std::size_t order) {
  if (field.size() > 0 && !(field[0] == 0))
    throw std::invalid_argument("vector_field_exp: field must vanish at 0");
  if (field.size() > 1 && !(field[1] == 0))
    throw std::invalid_argument("vector_field_exp: field must vanish to second order");
  // Each application of f -> field * f' raises the valuation by at least
  // one; the working order is doubled so truncation by derivative() never
  // reaches the reported coefficients.
  const std::size_t work = 2 * order + 2;
  const PowerSeries a = padded(field, work);
  PowerSeries term = PowerSeries::identity(work);
  PowerSeries sum = term;
  Rational factorial(1);
  for (std::size_t m = 1; m <= order; ++m) {
    term = a * term.derivative();
    if (term.is_zero()) break;
    factorial *= static_cast<long>(m);
    sum = sum + term * (Rational(1) / factorial);
  }
  return padded(sum, order);
}

PowerSeries vector_field_log(const PowerSeries& h, std::size_t order) {
  if (h.size() < 2 || !(h[0] == 0) || !(h[1] == 1))
    throw std::invalid_argument("vector_field_log: map must be tangent to the identity");
  if (order < 2) throw std::invalid_argument("vector_field_log: order must be >= 2");
  // At order n the unknown coefficient A_n enters the flow linearly with
  // unit weight, so it is read off as the defect of the partial field.
  PowerSeries a(order);
  for (std::size_t n = 2; n <= order; ++n) {
    const PowerSeries flow = vector_field_exp(a, order);
    const Rational hn = n < h.size() ? h[n] : Rational(0);
    a[n] = a[n] + (hn - flow[n]);
  }
  return a;
}

NormalForm szekeres_normal_form(const Rational& beta2, const Rational& beta3,
                                const std::vector<Rational>& higher,
                                std::size_t K) {
  if (beta2 == 0)
    throw std::invalid_argument("szekeres_normal_form: beta2 must be nonzero");
  if (K < 2) throw std::invalid_argument("szekeres_normal_form: order must be >= 2");
  const std::size_t work = K + 6;

  // 1/field = (1/beta2) z^{-2} (1 + w)^{-1}: the Laurent coefficient of
  // z^j is inv[j+2]/beta2.
  PowerSeries w(work);
  w[1] = beta3 / beta2;
  for (std::size_t k = 0; k < higher.size() && k + 2 <= work; ++k)
    w[k + 2] = higher[k] / beta2;
  PowerSeries one(work);
  one[0] = Rational(1);
  const PowerSeries inv = (one + w).reciprocal();

  const Rational a = inv[1] / beta2;  // residue -beta3/beta2^2

  // v(z) integrates the regular part: v_0 = -1/beta2, v_1 = 0 (the free
  // integration constant, chosen so the log u(0) term drops out and the
  // coefficients stay rational), v_k = c_{k-2}/(k-1) for k >= 2.
  PowerSeries v(work);
  v[0] = -Rational(1) / beta2;
  for (std::size_t k = 2; k <= work; ++k)
    v[k] = inv[k] / (beta2 * Rational(static_cast<long>(k) - 1));

  // Fixed-point iteration for 1/u = v - a z log(u/u0) + a z log(1 + a z u);
  // the right side at order k only uses u below order k, so each pass
  // settles one more coefficient.
  PowerSeries u = PowerSeries::constant(-beta2, work);
  for (std::size_t pass = 0; pass <= work + 1; ++pass) {
    const PowerSeries log_ratio = u.log_scaled();
    PowerSeries arg = (u.shifted(1) * a) + one;
    const PowerSeries log_shift = arg.log_scaled();
    const PowerSeries den =
        v - (log_ratio * a).shifted(1) + (log_shift * a).shifted(1);
    PowerSeries next = den.reciprocal();
    if (next == u) break;
    u = std::move(next);
  }

  NormalForm nf;
  nf.u = u.truncated(K);
  nf.phi = u.shifted(1).truncated(K + 1);
  nf.residue = a;
  nf.pole_order = 2;
  nf.target_quadratic = Rational(-1);
  nf.target_cubic = -a;
  return nf;
}

PowerSeries szekeres_residual(const Rational& beta2, const Rational& beta3,
                              const std::vector<Rational>& higher,
                              const NormalForm& nf) {
  const std::size_t K = nf.u.order();
  const std::size_t work = K + 4;
  const PowerSeries phi = padded(nf.phi, work);
  const PowerSeries f = field_series(beta2, beta3, higher, work);
  const PowerSeries push = phi.derivative() * f;
  const PowerSeries phi2 = phi * phi;
  const PowerSeries target = -phi2 + (phi2 * phi) * nf.target_cubic;
  return (push - target).truncated(K + 2);
}

}  // namespace melonrg
