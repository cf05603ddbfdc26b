#pragma once
// Formal normal forms at the parabolic fixed point of the coupling flow,
// in exact rational arithmetic: the logarithm of a tangent-to-identity map
// (the vector field whose time-1 flow reproduces the map) and the Szekeres
// change of variable reducing z' = beta2 z^2 + beta3 z^3 + z^4 h(z) to
// y' = -y^2 + (beta3/beta2^2) y^3.

#include <vector>

#include "melonrg/power_series.hpp"
#include "melonrg/rational.hpp"

namespace melonrg {

// Time-1 flow of the derivation X(f) = field * f' applied to the identity,
// i.e. sum_m X^m(id)/m!, truncated at `order`.  Requires field = O(z^2).
PowerSeries vector_field_exp(const PowerSeries& field, std::size_t order);

// The unique field A = O(z^2) whose time-1 flow equals h through `order`,
// determined coefficient by coefficient from the defining equation.
// Requires h tangent to the identity (h = z + O(z^2)).
PowerSeries vector_field_log(const PowerSeries& h, std::size_t order);

struct NormalForm {
  PowerSeries u;    // y = z u(z); u(0) = -beta2
  PowerSeries phi;  // the change of variable y(z) = z u(z)
  Rational residue;        // residue of 1/field at 0: -beta3/beta2^2
  int pole_order = 2;      // pole order of 1/field at 0
  Rational target_quadratic;  // -1
  Rational target_cubic;      // beta3/beta2^2
};

// Change of variable conjugating the field beta2 z^2 + beta3 z^3 + z^4 h(z)
// (higher[k] multiplies z^{k+4}) to the target -y^2 + (beta3/beta2^2) y^3,
// computed through series order K from the implicit relation
//   1/u + a z log(u/u(0)) - a z log(1 + a z u) = v(z),  a = -beta3/beta2^2,
// where v collects the integrated regular part of 1/field and the free
// linear coefficient of v is chosen so every coefficient stays rational.
NormalForm szekeres_normal_form(const Rational& beta2, const Rational& beta3,
                                const std::vector<Rational>& higher,
                                std::size_t K);

// Pushforward defect phi' * field - (-phi^2 + (beta3/beta2^2) phi^3) as a
// series; its coefficients vanish through order K + 2.
PowerSeries szekeres_residual(const Rational& beta2, const Rational& beta3,
                              const std::vector<Rational>& higher,
                              const NormalForm& nf);

}  // namespace melonrg
