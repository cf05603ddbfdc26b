#include "melonrg/flow.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace melonrg {

namespace {

constexpr double kPi = 3.14159265358979323846;

void validate_problem(const FlowProblem& fp) {
  if (!(fp.beta2 < 0.0))
    throw std::invalid_argument("flow: beta2 must be negative real");
}

bool higher_all_zero(const FlowProblem& fp) {
  for (double c : fp.higher)
    if (c != 0.0) return false;
  return true;
}

}  // namespace

Complex flow_field(const FlowProblem& fp, Complex z) {
  // Horner from the top coefficient down to beta2, then times z^2.
  Complex acc{0.0, 0.0};
  for (auto it = fp.higher.rbegin(); it != fp.higher.rend(); ++it)
    acc = acc * z + *it;
  acc = acc * z + fp.beta3;
  acc = acc * z + fp.beta2;
  return acc * z * z;
}

Complex quadratic_exact(double beta2, Complex g_r, double t) {
  const Complex den = Complex{1.0, 0.0} - beta2 * g_r * t;
  if (std::abs(den) < 1e-300)
    throw std::domain_error("quadratic flow reached its pole");
  return g_r / den;
}

namespace {

// Dormand-Prince 4(5) on the autonomous complex field.  Marches through the
// strictly increasing target times, landing on each exactly; records every
// accepted step into traj (if given) and the value at each target into
// grid_out (if given).
void integrate_impl(const FlowProblem& fp, const std::vector<double>& targets,
                    double tol, double escape_radius, Trajectory* traj,
                    std::vector<Complex>* grid_out) {
  validate_problem(fp);
  if (!(tol > 0.0)) throw std::invalid_argument("flow: tolerance must be positive");
  for (std::size_t i = 0; i < targets.size(); ++i) {
    if (targets[i] < 0.0 || (i > 0 && targets[i] <= targets[i - 1]))
      throw std::invalid_argument("flow: times must be nonnegative and strictly increasing");
  }
  const double radius = escape_radius > 0.0 ? escape_radius : 1e6;
  auto f = [&fp](Complex z) { return flow_field(fp, z); };

  double t = 0.0;
  Complex y = fp.g_r;
  if (traj) traj->samples.push_back({0.0, y});

  Complex k1 = f(y);  // FSAL slot
  double h = std::min(1.0, 1e-2 / std::max(1e-10, std::abs(k1)));
  long budget = 10'000'000;

  for (double target : targets) {
    if (target == 0.0) {
      if (grid_out) grid_out->push_back(y);
      continue;
    }
    while (t < target) {
      if (traj && traj->escaped) break;
      const bool final_step = h >= target - t;
      if (final_step) h = target - t;
      if (h < 1e-14 * std::max(1.0, t))
        throw std::runtime_error("flow: step size underflow near a singularity");
      if (--budget < 0) throw std::runtime_error("flow: step budget exhausted");

      const Complex k2 = f(y + h * (1.0 / 5.0) * k1);
      const Complex k3 = f(y + h * ((3.0 / 40.0) * k1 + (9.0 / 40.0) * k2));
      const Complex k4 = f(y + h * ((44.0 / 45.0) * k1 - (56.0 / 15.0) * k2 +
                                    (32.0 / 9.0) * k3));
      const Complex k5 =
          f(y + h * ((19372.0 / 6561.0) * k1 - (25360.0 / 2187.0) * k2 +
                     (64448.0 / 6561.0) * k3 - (212.0 / 729.0) * k4));
      const Complex k6 =
          f(y + h * ((9017.0 / 3168.0) * k1 - (355.0 / 33.0) * k2 +
                     (46732.0 / 5247.0) * k3 + (49.0 / 176.0) * k4 -
                     (5103.0 / 18656.0) * k5));
      const Complex y5 =
          y + h * ((35.0 / 384.0) * k1 + (500.0 / 1113.0) * k3 +
                   (125.0 / 192.0) * k4 - (2187.0 / 6784.0) * k5 +
                   (11.0 / 84.0) * k6);
      const Complex k7 = f(y5);
      const Complex y4 =
          y + h * ((5179.0 / 57600.0) * k1 + (7571.0 / 16695.0) * k3 +
                   (393.0 / 640.0) * k4 - (92097.0 / 339200.0) * k5 +
                   (187.0 / 2100.0) * k6 + (1.0 / 40.0) * k7);
      const double err = std::abs(y5 - y4);
      const double scale = tol + tol * std::max(std::abs(y), std::abs(y5));
      if (err <= scale) {
        t = final_step ? target : t + h;
        y = y5;
        k1 = k7;
        if (traj) {
          ++traj->accepted;
          traj->samples.push_back({t, y});
        }
        if (std::abs(y) > radius) {
          if (traj) {
            traj->escaped = true;
            traj->escape_time = t;
            break;
          }
          throw std::runtime_error("flow: trajectory escaped before reaching a grid time");
        }
      } else {
        if (traj) ++traj->rejected;
      }
      const double factor =
          err > 0.0 ? 0.9 * std::pow(scale / err, 0.2) : 5.0;
      h *= std::clamp(factor, 0.2, 5.0);
    }
    if (traj && traj->escaped) break;
    if (grid_out) grid_out->push_back(y);
  }
}

}  // namespace

Trajectory integrate(const FlowProblem& fp, double T, double tol,
                     double escape_radius) {
  if (!(T > 0.0)) throw std::invalid_argument("flow: horizon must be positive");
  Trajectory traj;
  integrate_impl(fp, {T}, tol, escape_radius, &traj, nullptr);
  return traj;
}

std::vector<Complex> integrate_grid(const FlowProblem& fp,
                                    const std::vector<double>& times,
                                    double tol, double escape_radius) {
  std::vector<Complex> out;
  out.reserve(times.size());
  integrate_impl(fp, times, tol, escape_radius, nullptr, &out);
  return out;
}

double domain_radius(const DomainSpec& d, double theta) {
  if (!(d.eps > 0.0)) throw std::invalid_argument("domain: eps must be positive");
  switch (d.kind) {
    case DomainKind::Omega:
      if (std::abs(theta) <= kPi / 2.0) return d.eps;
      return d.eps * std::abs(std::sin(theta));
    case DomainKind::Cardioid: {
      const double c = std::cos(theta / 2.0);
      return d.eps * c * c;
    }
    case DomainKind::Heps: {
      const double b = std::abs(d.beta32);
      if (std::abs(theta) <= kPi / 2.0)
        return d.eps / (1.0 + 3.0 * kPi * b * d.eps);
      const double s = std::abs(std::sin(theta));
      if (s == 0.0) return 0.0;
      return d.eps * s / (1.0 + d.eps * b * (std::abs(std::log(s)) + 3.0 * kPi));
    }
    case DomainKind::Disk:
      return d.eps;
    case DomainKind::NSdisk:
      if (std::abs(theta) >= kPi / 2.0) return 0.0;
      return 2.0 * d.eps * std::cos(theta);
  }
  return 0.0;
}

bool domain_contains(const DomainSpec& d, Complex z, double slack) {
  const double m = 1.0 + slack;
  const double rho = std::abs(z);
  const double theta = std::arg(z);
  const double bound = domain_radius(d, theta) * m;
  switch (d.kind) {
    case DomainKind::Omega:
    case DomainKind::Cardioid:
    case DomainKind::Heps:
      return rho <= bound;  // closed
    case DomainKind::Disk:
      return rho < bound;  // open
    case DomainKind::NSdisk:
      // Open disk tangent to the imaginary axis: 0 itself sits on the
      // boundary, where the chord formula degenerates.
      return rho > 0.0 && rho < bound;
  }
  return false;
}

bool eps_admissible(double eps, double beta32) {
  if (!(eps > 0.0)) return false;
  const double b = std::abs(beta32);
  return b * (2.0 * kPi + 1.0) * eps <= 1.0 / 3.0 &&
         kPi * b * eps <= 1.0 / 3.0 &&
         b * eps / std::exp(1.0) <= 1.0 / 3.0;
}

double max_admissible_eps(double beta32) {
  const double b = std::abs(beta32);
  if (b == 0.0) return std::numeric_limits<double>::infinity();
  return std::min({1.0 / (3.0 * b * (2.0 * kPi + 1.0)),
                   1.0 / (3.0 * kPi * b), std::exp(1.0) / (3.0 * b)});
}

double ns_disk_radius(double eps, double beta32) {
  if (!(eps > 0.0)) throw std::invalid_argument("ns_disk_radius: eps must be positive");
  return (1.0 / 6.0) * eps / (1.0 + 1.5 * kPi * std::abs(beta32) * eps);
}

namespace {

struct CubicData {
  Complex alpha;  // -beta2 g_r, positive multiple of g_r
  Complex beta;   // (beta3/beta2) g_r
};

CubicData cubic_data(const FlowProblem& fp) {
  return {-fp.beta2 * fp.g_r, (fp.beta3 / fp.beta2) * fp.g_r};
}

Complex u3_at(const CubicData& cd, double t) {
  const Complex w = Complex{1.0, 0.0} + cd.alpha * t;
  return w + cd.beta * std::log(w);
}

// Defect of the implicit relation at phi.
Complex phi_defect(const CubicData& cd, double t, Complex phi) {
  const Complex w = Complex{1.0, 0.0} + cd.alpha * t;
  const Complex u3 = w + cd.beta * std::log(w);
  const Complex num = u3 + cd.beta * phi + cd.beta;
  const Complex den = (Complex{1.0, 0.0} + cd.beta) * w;
  return phi - std::log(num / den);
}

}  // namespace

CubicPhi cubic_phi(const FlowProblem& fp, double t) {
  validate_problem(fp);
  if (!higher_all_zero(fp))
    throw std::invalid_argument("cubic_phi: higher coefficients must vanish");
  if (t < 0.0) throw std::invalid_argument("cubic_phi: time must be nonnegative");
  const CubicData cd = cubic_data(fp);
  if (t == 0.0 || std::abs(fp.g_r) == 0.0 || std::abs(cd.beta) == 0.0)
    return {Complex{0.0, 0.0}, 0.0};

  // Newton continuation from (t=0, phi=0); the step is halved until the
  // increment stays below 0.5, which keeps the iteration on the principal
  // solution branch.
  double s = 0.0;
  Complex phi{0.0, 0.0};
  double ds = t;
  while (s < t) {
    ds = std::min(ds, t - s);
    const double ts = s + ds;
    Complex cand = phi;
    bool converged = false;
    for (int it = 0; it < 40; ++it) {
      const Complex g = phi_defect(cd, ts, cand);
      if (std::abs(g) <= 1e-13) {
        converged = true;
        break;
      }
      const Complex w = Complex{1.0, 0.0} + cd.alpha * ts;
      const Complex u3 = w + cd.beta * std::log(w);
      const Complex gp = Complex{1.0, 0.0} - cd.beta / (u3 + cd.beta * cand + cd.beta);
      if (std::abs(gp) < 1e-300) break;
      cand -= g / gp;
      if (!std::isfinite(cand.real()) || !std::isfinite(cand.imag())) break;
    }
    const double jump = std::abs(cand - phi);
    if (!converged || jump >= 0.5) {
      if (converged && jump >= kPi)
        throw std::runtime_error("cubic_phi: branch jump detected");
      ds *= 0.5;
      if (ds < t * 1e-12)
        throw std::runtime_error("cubic_phi: continuation step underflow");
      continue;
    }
    s = ts;
    phi = cand;
    ds *= 2.0;
  }
  return {phi, std::abs(phi_defect(cd, t, phi))};
}

Complex cubic_solution(const FlowProblem& fp, double t) {
  const CubicPhi p = cubic_phi(fp, t);
  const CubicData cd = cubic_data(fp);
  return fp.g_r / (u3_at(cd, t) + cd.beta * p.phi);
}

namespace {

double higher_poly(const FlowProblem& fp, double x) {
  double acc = 0.0;
  for (auto it = fp.higher.rbegin(); it != fp.higher.rend(); ++it)
    acc = acc * x + *it;
  return acc;
}

double a_of(const FlowProblem& fp, double x) {
  return 1.0 + (fp.beta3 / fp.beta2) * x + x * x * higher_poly(fp, x) / fp.beta2;
}

}  // namespace

double g_crit(const FlowProblem& fp) {
  validate_problem(fp);
  const double x_max = 1e3;
  const double dx = 1e-3;
  double prev_x = 0.0;
  double prev_a = a_of(fp, 0.0);  // = 1
  for (double x = dx; x <= x_max; x += dx) {
    const double ax = a_of(fp, x);
    if (ax <= 0.0) {
      double lo = prev_x, hi = x;
      for (int i = 0; i < 200; ++i) {
        const double mid = 0.5 * (lo + hi);
        if (a_of(fp, mid) <= 0.0)
          hi = mid;
        else
          lo = mid;
      }
      return 0.5 * (lo + hi);
    }
    prev_x = x;
    prev_a = ax;
  }
  (void)prev_a;
  return std::numeric_limits<double>::infinity();
}

SandwichReport sandwich_check(const FlowProblem& fp, double eps,
                              const std::vector<double>& t_grid) {
  validate_problem(fp);
  if (fp.g_r.imag() != 0.0)
    throw std::invalid_argument("sandwich_check: initial coupling must be real");
  const double x0 = fp.g_r.real();
  if (!(x0 > 0.0))
    throw std::invalid_argument("sandwich_check: initial coupling must be positive");
  if (fp.beta3 == 0.0)
    throw std::invalid_argument("sandwich_check: beta3 must be nonzero");
  if (!(eps > 0.0 && eps < 1.0))
    throw std::invalid_argument("sandwich_check: eps must lie in (0,1)");
  if (t_grid.empty())
    throw std::invalid_argument("sandwich_check: empty time grid");
  for (std::size_t i = 0; i < t_grid.size(); ++i)
    if (!(t_grid[i] > 0.0) || (i > 0 && t_grid[i] <= t_grid[i - 1]))
      throw std::invalid_argument("sandwich_check: grid must be positive and strictly increasing");
  if (!(x0 < g_crit(fp)))
    throw std::invalid_argument("sandwich_check: initial coupling not below the critical value");
  // The comparison fields bracket the full field iff |x h(x)| < eps |beta3|
  // along the orbit, which stays inside (0, g_r].
  const double bound = eps * std::abs(fp.beta3);
  for (int i = 1; i <= 10000; ++i) {
    const double x = x0 * static_cast<double>(i) / 10000.0;
    if (!(std::abs(x * higher_poly(fp, x)) < bound))
      throw std::invalid_argument("sandwich_check: higher part too large for this eps");
  }

  const double sgn = fp.beta3 > 0.0 ? 1.0 : -1.0;
  FlowProblem lower{fp.beta2, (1.0 - sgn * eps) * fp.beta3, {}, fp.g_r};
  FlowProblem upper{fp.beta2, (1.0 + sgn * eps) * fp.beta3, {}, fp.g_r};

  const std::vector<Complex> g = integrate_grid(fp, t_grid, 1e-12);
  SandwichReport rep;
  rep.min_lower_margin = std::numeric_limits<double>::infinity();
  rep.min_upper_margin = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < t_grid.size(); ++i) {
    const double lo = cubic_solution(lower, t_grid[i]).real();
    const double hi = cubic_solution(upper, t_grid[i]).real();
    rep.min_lower_margin = std::min(rep.min_lower_margin, g[i].real() - lo);
    rep.min_upper_margin = std::min(rep.min_upper_margin, hi - g[i].real());
  }
  rep.strict = rep.min_lower_margin > 0.0 && rep.min_upper_margin > 0.0;
  return rep;
}

std::vector<Complex> discrete_iterate(const std::vector<double>& h_coeffs,
                                      Complex g_r, long n, double disk_radius) {
  if (h_coeffs.size() < 2 || h_coeffs[0] != 0.0 || h_coeffs[1] != 1.0)
    throw std::invalid_argument("discrete_iterate: map must be tangent to the identity");
  if (n < 0) throw std::invalid_argument("discrete_iterate: negative count");
  if (!(disk_radius > 0.0))
    throw std::invalid_argument("discrete_iterate: radius must be positive");
  std::vector<Complex> orbit;
  orbit.reserve(static_cast<std::size_t>(n) + 1);
  Complex g = g_r;
  if (std::abs(g) >= disk_radius)
    throw std::runtime_error("discrete_iterate: orbit escaped the disk");
  orbit.push_back(g);
  for (long k = 0; k < n; ++k) {
    Complex acc{0.0, 0.0};
    for (auto it = h_coeffs.rbegin(); it != h_coeffs.rend(); ++it)
      acc = acc * g + *it;
    g = acc;
    if (std::abs(g) >= disk_radius)
      throw std::runtime_error("discrete_iterate: orbit escaped the disk");
    orbit.push_back(g);
  }
  return orbit;
}

InvariantDirections attracting_directions(Complex a_top, int r) {
  if (std::abs(a_top) == 0.0)
    throw std::invalid_argument("attracting_directions: leading coefficient is zero");
  if (r < 1) throw std::invalid_argument("attracting_directions: order must be >= 1");
  const double a = std::arg(a_top);
  InvariantDirections dirs;
  for (int k = 0; k < r; ++k) {
    const double th_att = ((2.0 * k + 1.0) * kPi - a) / r;
    const double th_rep = (2.0 * k * kPi - a) / r;
    dirs.attracting.push_back(std::polar(1.0, th_att));
    dirs.repelling.push_back(std::polar(1.0, th_rep));
  }
  return dirs;
}

}  // namespace melonrg
