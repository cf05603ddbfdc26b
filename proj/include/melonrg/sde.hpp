#pragma once

#include <vector>

#include "melonrg/cutoffs.hpp"

namespace melonrg {

// Bare data of the cutoff model on Z^5.
struct ModelParams {
    double g_b;        // bare coupling
    double Z_b;        // bare field strength
    double m_r_sq;     // renormalized mass^2, input (> 0); m_b^2 is derived
    CutoffFamily cutoffs;
};

// Converged monochrome mass-renormalized self-energy on n in -N..N,
// N = cutoffs.momentum_bound(). sigma(0) = 0 and sigma(-n) = sigma(n)
// exactly: sweeps update through n^2 and mirror the table.
struct SelfEnergyTable {
    long N = 0;
    std::vector<double> values;  // index n + N
    ModelParams params;
    double residual = 0.0;       // sup-norm equation residual of the returned table
    long iterations = 0;

    double at(long n) const {
        long a = n < 0 ? -n : n;
        return a > N ? 0.0 : values[static_cast<std::size_t>(a + N)];
    }
};

// Fixed point of
//   sigma(n) = -g_b Z_b^2 sum_{p in Z^5} kappa_{j_max}(p^2)
//              (delta_{p_c,n} - delta_{p_c,0}) / (Z_b p^2 + m_r^2 - sum_c' sigma(p_c'))
// by plain Picard iteration, 0.5 damping engaged only when the sweep residual
// increases. Throws on non-convergence and on a non-positive denominator.
SelfEnergyTable solve_sigma_mr(const ModelParams& p, double tol = 1e-12,
                               long max_iter = 10000);

// Total mass counterterm
//   delta_m = 5 g_b Z_b^2 sum_{q in Z^4} kappa_{j_max}(q^2)
//             / (Z_b q^2 + m_r^2 - sum_{c=1..4} sigma(q_c)).
double delta_m(const ModelParams& p, const SelfEnergyTable& sigma);

// m_b^2 = (m_r^2 - delta_m) / Z_b.
double m_b_sq(const ModelParams& p, double delta_m_value);

// Effective ladders for j in -1..j_max (index j + 1):
//   Z_j   = Z_b - d sigma^{>=j+1} / d n_c^2 (0)   (forward difference in n^2)
//   g_j Z_j^2 = g_b Z_b^2 / (1 + g_b Z_b^2 B_{j+1}),
//   B_l = sum_{q in Z^4} [eta_{>=l}(q^2) / (Z_b q^2 + m_r^2
//         - sum_c sigma^{>=l}(q_c))]^2,
// where the slice self-energy sigma^{>=l} re-weights the converged equation by
// eta_{>=l} while keeping the full sigma in its denominator. The top rungs
// Z_{j_max} = Z_b and g_{j_max} Z_{j_max}^2 = g_b Z_b^2 are exact (empty slice
// set).
struct EffectiveConstants {
    std::vector<double> Z;    // index j + 1, j in -1..j_max
    std::vector<double> gZ2;
    std::vector<double> g;

    double Z_at(int j) const { return Z[static_cast<std::size_t>(j + 1)]; }
    double gZ2_at(int j) const { return gZ2[static_cast<std::size_t>(j + 1)]; }
    double g_at(int j) const { return g[static_cast<std::size_t>(j + 1)]; }
};

EffectiveConstants effective_constants(const ModelParams& p, const SelfEnergyTable& sigma);

// Slice self-energy table sigma^{>=l}(n) for n in -N..N (exposed for tests;
// l = 0 reproduces the converged sigma, l = j_max + 1 vanishes identically).
std::vector<double> sigma_slice(const ModelParams& p, const SelfEnergyTable& sigma, int l);

// One-scale beta data at slice j (requires j + 2 <= j_max so eta_{j+2} is a
// genuine slice):
//   K_j    = sum_{p in Z^4} eta'_{j+1}(p^2) / (p^2 + m_r^2)
//   Atilde = sum_{p in Z^4} eta_{j+1}(p^2) / (p^2 + m_r^2)^2
//   A      = sum_{p in Z^4} (eta_{j+1}^2 + 2 eta_{j+1} eta_{j+2}) / (p^2 + m_r^2)^2
//   beta_j = -[-A + 2 Atilde - 2 K_j + 2 K_{j+1}]
// The Z^4 sums are grouped radially by u = p^2 with the exact lattice-shell
// counts r_4(u) = 8 sum_{d | u, 4 not| d} d.
struct BetaCoefficients {
    double K_j = 0.0;
    double K_j1 = 0.0;
    double A = 0.0;
    double A_tilde = 0.0;
    double beta_j = 0.0;
};

BetaCoefficients beta_coefficients(const CutoffFamily& c, double m_r_sq, int j);

// beta_2 = -int_{R^4} d^4p / p^4 h(p^2) [2(1 - kappa(M^-2 p^2)) + kappa(p^2)
//          + kappa(M^2 p^2)], reduced radially to
//          -pi^2 int F(u) / u du over the support of h,
// by adaptive quadrature to relative tolerance 1e-10. Strictly negative.
double beta2_integral(const CutoffFamily& c);

}  // namespace melonrg
