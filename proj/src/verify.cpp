#include "melonrg/verify.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>

#include "melonrg/census.hpp"
#include "melonrg/flow.hpp"
#include "melonrg/if_map.hpp"
#include "melonrg/melonic_series.hpp"
#include "melonrg/normal_form.hpp"
#include "melonrg/sde.hpp"

namespace melonrg {

namespace {

template <class... Args>
std::string fmt(const char* format, Args... args) {
  char buf[160];
  std::snprintf(buf, sizeof buf, format, args...);
  return buf;
}

void add(std::vector<CheckResult>& out, const std::string& name, bool pass,
         std::string detail) {
  out.push_back({name, pass, std::move(detail)});
}

void graphs_suite(std::vector<CheckResult>& out) {
  bool table_ok = true;
  for (const TableRow& row : divergence_table_representatives()) {
    const DivergenceClass c = classify(row.graph);
    if (c.external_legs != row.external_legs ||
        c.boundary_components != row.boundary_components ||
        !(c.degree == row.degree) || c.omega != row.omega)
      table_ok = false;
  }
  add(out, "divergence-table-rows", table_ok, "5 representatives, exact");

  bool census_ok = true, ifmap_ok = true, melon_ok = true;
  long classes = 0;
  for (const ColouredGraph& g : exhaustive_census(2)) {
    ++classes;
    const GraphAnalysis an = analyze_graph(g);
    const long f0 = an.faces.with_zero;
    if (an.cls.omega != -2 * an.zero_edges + f0) census_ok = false;
    if (!an.face_consistent) census_ok = false;
    const ColouredMap m = to_if_map(g);
    if (!(classify_if(m) == an.cls)) ifmap_ok = false;
    if (is_melonic(g) != is_melonic_map(m)) melon_ok = false;
    if (!isomorphic(from_if_map(m), g)) ifmap_ok = false;
  }
  add(out, "census-2-degree-identity", census_ok,
      std::to_string(classes) + " classes, omega = -2L+F0 and face identity exact");
  add(out, "census-2-map-bijection", ifmap_ok,
      "classify matches through the map; round trip isomorphic");
  add(out, "census-2-melonic-trees", melon_ok, "melonic iff the map is a tree");
}

void series_suite(std::vector<CheckResult>& out) {
  bool counts_ok = true;
  for (unsigned long n = 1; n <= 8; ++n)
    if (enumerate_melonic_2pt(n) != sigma_gf_coefficient(n)) counts_ok = false;
  add(out, "melonic-2pt-counts", counts_ok, "n <= 8, exact");

  bool g4_ok = true;
  for (int n = 1; n <= 4; ++n)
    if (Integer(divergent_4pt_census(n)) != gamma4_gf_coefficient(n)) g4_ok = false;
  add(out, "gamma4-low-orders", g4_ok, "orders 1..4 vs direct census, exact");

  const double ratio = gamma4_asymptotic_ratio(100);
  add(out, "gamma4-asymptotic", std::abs(ratio - 1.0) < 0.05,
      fmt("ratio at n=100: %.6f (tol 5%%)", ratio));

  const PowerSeries s = sigma_gf_series(30);
  const PowerSeries quad = (s * s) * Rational(5) - s + PowerSeries::identity(30);
  add(out, "sigma-quadratic-equation", quad.is_zero(), "5S^2 - S + x = 0, order 30");
}

void sde_suite(std::vector<CheckResult>& out) {
  const ModelParams p{0.01, 1.0, 1.0, CutoffFamily(2, 2)};
  const SelfEnergyTable sig = solve_sigma_mr(p, 1e-12);
  add(out, "self-energy-residual", sig.residual <= 1e-12,
      fmt("residual %.2e (tol %.0e)", sig.residual, 1e-12));
  bool sym_ok = sig.at(0) == 0.0;
  for (long n = 1; n <= sig.N; ++n)
    if (sig.at(n) != sig.at(-n)) sym_ok = false;
  add(out, "self-energy-symmetry", sym_ok, "sigma(0)=0 and reflection, exact");

  const EffectiveConstants eff = effective_constants(p, sig);
  const bool top_ok = eff.Z_at(p.cutoffs.j_max()) == p.Z_b &&
                      eff.gZ2_at(p.cutoffs.j_max()) == p.g_b * p.Z_b * p.Z_b;
  add(out, "effective-top-slice", top_ok, "Z_jmax = Z_b, g Z^2 preserved, exact");
  bool mono = true;
  for (int j = -1; j < p.cutoffs.j_max(); ++j)
    if (!(eff.g_at(j) > eff.g_at(j + 1))) mono = false;
  add(out, "effective-coupling-decreasing", mono, "g_j decreasing in j");

  const double b2_2 = beta2_integral(CutoffFamily(2, 2));
  const double b2_3 = beta2_integral(CutoffFamily(3, 2));
  add(out, "beta2-negative", b2_2 < 0.0 && b2_3 < 0.0,
      fmt("M=2: %.6f, M=3: %.6f", b2_2, b2_3));
}

void flow_suite(std::vector<CheckResult>& out) {
  {
    FlowProblem fp{-1.0, 0.0, {}, {0.2, 0.1}};
    const auto g = integrate_grid(fp, {1.0, 10.0, 100.0}, 1e-10);
    double worst = 0.0;
    const std::vector<double> ts = {1.0, 10.0, 100.0};
    for (std::size_t i = 0; i < ts.size(); ++i)
      worst = std::max(worst, std::abs(g[i] - quadratic_exact(-1.0, fp.g_r, ts[i])));
    add(out, "quadratic-closed-form", worst < 1e-8,
        fmt("max diff %.2e (tol %.0e)", worst, 1e-8));
  }
  {
    FlowProblem fp{-1.0, 0.3, {}, {0.1, 0.05}};
    double worst_res = 0.0, worst_diff = 0.0;
    const auto g = integrate_grid(fp, {1.0, 10.0, 100.0}, 1e-12);
    const std::vector<double> ts = {1.0, 10.0, 100.0};
    for (std::size_t i = 0; i < ts.size(); ++i) {
      const CubicPhi ph = cubic_phi(fp, ts[i]);
      worst_res = std::max(worst_res, ph.residual);
      worst_diff = std::max(worst_diff, std::abs(g[i] - cubic_solution(fp, ts[i])));
    }
    add(out, "cubic-implicit-residual", worst_res < 1e-10,
        fmt("max residual %.2e (tol %.0e)", worst_res, 1e-10));
    add(out, "cubic-vs-integrate", worst_diff < 1e-6,
        fmt("max diff %.2e (tol %.0e)", worst_diff, 1e-6));
  }
  {
    PowerSeries h(8);
    h[1] = Rational(1);
    h[2] = Rational(-1);
    h[3] = make_rational(2, 3);
    h[5] = make_rational(-1, 7);
    const PowerSeries x = vector_field_log(h, 8);
    add(out, "vector-field-log-roundtrip", vector_field_exp(x, 8) == h,
        "exp(log h) = h to order 8, exact");
    const Rational b2(-1), b3 = make_rational(2, 3);
    const NormalForm nf = szekeres_normal_form(b2, b3, {make_rational(1, 4)}, 8);
    const PowerSeries res = szekeres_residual(b2, b3, {make_rational(1, 4)}, nf);
    add(out, "normal-form-residual", res.is_zero(),
        "pushforward residual zero to order 10, exact");
  }
  {
    FlowProblem fp{-1.0, 0.4, {0.2}, {0.05, 0.0}};
    std::vector<double> grid;
    for (int i = 1; i <= 100; ++i) grid.push_back(1.0 * i);
    const SandwichReport rep = sandwich_check(fp, 0.5, grid);
    add(out, "real-sandwich", rep.strict,
        fmt("margins %.2e / %.2e > 0", rep.min_lower_margin, rep.min_upper_margin));
  }
  {
    const InvariantDirections d = attracting_directions({-1.0, 0.0}, 1);
    const bool ok = std::abs(d.attracting[0] - Complex{1.0, 0.0}) < 1e-12 &&
                    std::abs(d.repelling[0] - Complex{-1.0, 0.0}) < 1e-12;
    add(out, "invariant-directions", ok, "negative quadratic term: +1 / -1");
  }
}

}  // namespace

std::vector<TableRow> divergence_table_representatives() {
  std::vector<TableRow> rows;
  rows.push_back({melonic_4pt_chain(1, 1), 4, 1, Rational(0), 0});
  rows.push_back({fundamental_2pt_melon(1), 2, 1, Rational(0), 2});
  rows.push_back({fundamental_vacuum_melon(1), 0, 0, Rational(0), 5});
  rows.push_back({necklace_chain({1}), 0, 0, Rational(3), 2});
  rows.push_back({necklace_chain({1, 2}), 0, 0, Rational(5), 0});
  return rows;
}

std::vector<CheckResult> verify_suite(const std::string& suite) {
  std::vector<CheckResult> out;
  const bool all = suite == "all";
  if (all || suite == "graphs") graphs_suite(out);
  if (all || suite == "series") series_suite(out);
  if (all || suite == "sde") sde_suite(out);
  if (all || suite == "flow") flow_suite(out);
  if (out.empty()) throw std::invalid_argument("unknown suite: " + suite);
  return out;
}

}  // namespace melonrg
