#pragma once

#include <utility>
#include <vector>

namespace melonrg {

// Smooth multiscale cutoff family built from the mollified step
//   kappa = indicator([-a, a]) convolved with the bump chi_eps,
// where chi_eps(x) = c * exp(-1/(1 - (x/eps)^2)) on (-eps, eps), normalized
// to unit mass. kappa == 1 on [0, a-eps] and == 0 on [a+eps, inf).
//
// Scaled cutoffs: kappa_j(u) = kappa(M^{-2j} u). Slices: eta_0 = kappa_0 and
// eta_j = kappa_j - kappa_{j-1} for j >= 1, so that sum_{j<=j_max} eta_j =
// kappa_{j_max} exactly (telescoping) and eta_i * eta_j = 0 for |i-j| > 1.
class CutoffFamily {
  public:
    // M: integer slice ratio > 1 (M^2 > 2); j_max: top slice index >= 0;
    // a, eps: plateau half-width and mollifier width, 0 < eps < a.
    CutoffFamily(int M, int j_max, double a = 2.5, double eps = 1.5);

    int M() const { return M_; }
    int j_max() const { return j_max_; }
    double a() const { return a_; }
    double eps() const { return eps_; }

    // Largest integer momentum component with nonzero cutoff weight:
    // N = floor(sqrt(a+eps) * M^j_max).
    long momentum_bound() const;

    // The unscaled profile kappa(u); even in u.
    double kappa(double u) const;
    // kappa_j(u) = kappa(M^{-2j} u); j may be -1 and larger than j_max
    // (the pure profile rescaled), callers slice with eta/eta_geq.
    double kappa_j(int j, double u) const;
    // Slice eta_j, 0 <= j <= j_max.
    double eta(int j, double u) const;
    // Tail sum_{l=j}^{j_max} eta_l; equals kappa_{j_max} - kappa_{j-1} for
    // j >= 1 and kappa_{j_max} for j = 0; zero for j > j_max.
    double eta_geq(int j, double u) const;
    // d kappa / du = chi_eps(u+a) - chi_eps(u-a), in closed form.
    double kappa_prime(double u) const;
    // d eta_j / du.
    double eta_prime(int j, double u) const;

    // Single-slice profile h(u) = kappa(u) - kappa(M^2 u), so that
    // eta_j(u) = h(M^{-2j} u) for j >= 1.
    double h(double u) const;
    // Support interval of h: [(a-eps)/M^2, a+eps].
    std::pair<double, double> h_support() const;

    // The normalized mollifier chi_eps.
    double mollifier(double x) const;

  private:
    double bump_cdf(double t) const;  // CDF of the unit-width normalized bump at t in [-1, 1].

    int M_;
    int j_max_;
    double a_;
    double eps_;
    double inv_norm_;                // 1 / integral of exp(-1/(1-t^2)) over [-1, 1].
    std::vector<double> cdf_;        // cached CDF samples on a uniform grid over [-1, 1].
    std::vector<double> pdf_;        // normalized bump values at the same nodes.
    double grid_step_;
};

}  // namespace melonrg
