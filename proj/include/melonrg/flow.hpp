#pragma once
// Complex coupling-constant flow dg/dt = beta2 g^2 + beta3 g^3 + g^4 h(g)
// with beta2 < 0 real: exact quadratic solution, adaptive integration,
// invariant domains, the log-corrected cubic closed form, two-sided real
// comparison bounds, and parabolic discrete-map orbits.

#include <complex>
#include <vector>

namespace melonrg {

using Complex = std::complex<double>;

// Flow data.  higher[k] is the coefficient of g^{k+4}; g_r is the initial
// coupling at t = 0.  beta2 must be negative (real).
struct FlowProblem {
  double beta2 = -1.0;
  double beta3 = 0.0;
  std::vector<double> higher;
  Complex g_r{0.0, 0.0};
};

// Right-hand side beta2 z^2 + beta3 z^3 + sum_k higher[k] z^{k+4}.
Complex flow_field(const FlowProblem& fp, Complex z);

// Exact solution of dg/dt = beta2 g^2: g(t) = g_r / (1 - beta2 g_r t).
// Throws std::domain_error when the denominator vanishes (real-negative
// initial data reaching the pole).
Complex quadratic_exact(double beta2, Complex g_r, double t);

struct Trajectory {
  struct Sample {
    double t;
    Complex g;
  };
  std::vector<Sample> samples;  // strictly increasing t; front() is (0, g_r)
  long accepted = 0;
  long rejected = 0;
  bool escaped = false;  // |g| crossed the escape radius before reaching T
  double escape_time = 0.0;
};

// Adaptive embedded Runge-Kutta (Dormand-Prince 4/5) integration on [0, T].
// escape_radius <= 0 selects a permissive default guarding only against
// overflow.  Throws std::runtime_error if the step size underflows (pole)
// or the step budget is exhausted.
Trajectory integrate(const FlowProblem& fp, double T, double tol = 1e-10,
                     double escape_radius = 0.0);

// Values of g at the given strictly increasing nonnegative times, computed
// in one continued pass.  Same error behaviour as integrate.
std::vector<Complex> integrate_grid(const FlowProblem& fp,
                                    const std::vector<double>& times,
                                    double tol = 1e-10,
                                    double escape_radius = 0.0);

// Invariant domains in the coupling plane.  With rho = |z|, theta = arg z:
//   Omega    (closed): rho <= eps on |theta| <= pi/2,
//                      rho <= eps |sin theta| on pi/2 < |theta| <= pi.
//   Cardioid (closed): rho <= eps cos^2(theta/2); contained in Omega.
//   Heps     (closed): rho <= eps / (1 + 3 pi |b| eps) on |theta| <= pi/2,
//                      rho <= eps |sin theta| /
//                             (1 + eps |b| (|log|sin theta|| + 3 pi))
//                      on pi/2 < |theta| <= pi, with b = beta32.
//   Disk     (open):   rho < eps.
//   NSdisk   (open):   |z - eps| < eps, the disk tangent to the imaginary
//                      axis at 0 (eps plays the role of the radius).
enum class DomainKind { Omega, Cardioid, Heps, Disk, NSdisk };

struct DomainSpec {
  DomainKind kind = DomainKind::Omega;
  double eps = 0.1;
  double beta32 = 0.0;  // beta3/beta2, used by Heps only
};

// Boundary radius of the domain along direction theta (0 where the ray
// leaves the domain immediately; NSdisk gives its chord length).
double domain_radius(const DomainSpec& d, double theta);

// Membership test; slack >= 0 inflates the radial bound multiplicatively
// (membership up to rounding of points expected on the boundary).
bool domain_contains(const DomainSpec& d, Complex z, double slack = 0.0);

// Smallness conditions on eps used by the cubic bounds, with b = beta3/beta2:
//   |b| (2 pi + 1) eps <= 1/3,  pi |b| eps <= 1/3,  |b| eps / e <= 1/3.
bool eps_admissible(double eps, double beta32);
double max_admissible_eps(double beta32);  // +infinity when beta32 == 0

// Radius of the disk tangent to the imaginary axis at 0 contained in the
// image domain of the cubic bounds: (1/6) eps / (1 + (3 pi / 2) |b| eps).
double ns_disk_radius(double eps, double beta32);

// Log-corrected cubic solution.  With alpha = -beta2 g_r (beta2 < 0),
// beta = (beta3/beta2) g_r and u3(t) = 1 + alpha t + beta Log(1 + alpha t),
// phi solves  phi = Log((u3 + beta phi + beta) / ((1 + beta)(1 + alpha t)))
// with phi(0) = 0 on the principal branch, and
//   g(t) = g_r / (u3(t) + beta phi(t)).
// cubic_phi follows the solution branch by Newton continuation from t = 0;
// residual is the defect of the implicit relation at the returned value.
// Throws std::runtime_error on branch jumps or failed continuation, and
// std::invalid_argument if fp has nonzero higher coefficients.
struct CubicPhi {
  Complex phi;
  double residual = 0.0;
};
CubicPhi cubic_phi(const FlowProblem& fp, double t);
Complex cubic_solution(const FlowProblem& fp, double t);

// Smallest positive zero of a(x) = 1 + (beta3/beta2) x + x^2 h(x) / beta2
// (the boundary of the real decreasing-solution window); +infinity if a
// has no zero on the scanned range.
double g_crit(const FlowProblem& fp);

// Two-sided comparison for real initial data: the integrated flow must lie
// strictly between the cubic solutions with beta3 replaced by
// (1 -+ sgn(beta3) eps) beta3 at every positive grid time.  Preconditions
// (throw std::invalid_argument): g_r real in (0, g_crit), beta3 != 0, and
// sup_{0 < x <= g_r} |x h(x)| < eps |beta3| (checked on a fine grid), which
// certifies that the field is pinched between the two cubic fields along
// the orbit.
struct SandwichReport {
  bool strict = false;        // both strict inequalities held at every t > 0
  double min_lower_margin = 0.0;  // min over grid of g - lower
  double min_upper_margin = 0.0;  // min over grid of upper - g
};
SandwichReport sandwich_check(const FlowProblem& fp, double eps,
                              const std::vector<double>& t_grid);

// Orbit g_{k+1} = h(g_k) of a polynomial map tangent to the identity;
// h_coeffs = {h_0, h_1, ...} with h_0 = 0, h_1 = 1 required.  Returns
// (g_0, ..., g_n).  Throws std::runtime_error if the orbit leaves the disk
// |z| < disk_radius.
std::vector<Complex> discrete_iterate(const std::vector<double>& h_coeffs,
                                      Complex g_r, long n,
                                      double disk_radius = 1.0);

// Invariant directions of z' = a_top z^{r+1} + O(z^{r+2}) at 0: unit
// vectors v with a_top v^r real negative (attracting) or real positive
// (repelling); r of each kind, interleaved.  Angles follow
//   theta_att = ((2k+1) pi - arg a_top) / r,
//   theta_rep = (2 k pi - arg a_top) / r,     k = 0..r-1.
struct InvariantDirections {
  std::vector<Complex> attracting;
  std::vector<Complex> repelling;
};
InvariantDirections attracting_directions(Complex a_top, int r);

}  // namespace melonrg
