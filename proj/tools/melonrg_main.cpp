// Command-line front end: graph analysis and census, intermediate-field
// conversion, exact series tables, the self-energy fixed point, beta
// coefficients, flow integration and domain sampling, and the named
// property-check suites.

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "melonrg/census.hpp"
#include "melonrg/flow.hpp"
#include "melonrg/if_map.hpp"
#include "melonrg/io_json.hpp"
#include "melonrg/melonic_series.hpp"
#include "melonrg/sde.hpp"
#include "melonrg/verify.hpp"

namespace {

using melonrg::Complex;
using nlohmann::json;

// All numeric output is printed through one fixed format so identical
// configurations give byte-identical files.
std::string num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void write_text(const std::string& path, const std::string& body) {
  if (path.empty()) {
    std::cout << body;
    return;
  }
  std::ofstream out(path);
  if (!out) throw std::invalid_argument(path + ": cannot open for writing");
  out << body;
}

json analysis_record(const melonrg::GraphAnalysis& an) {
  json r;
  r["E"] = an.external_legs;
  r["C_boundary"] = an.boundary_components;
  r["degree"] = melonrg::to_string(an.degree);
  r["omega"] = an.cls.omega;
  r["family"] = melonrg::family_name(an.cls.family);
  r["F"] = an.faces.total;
  r["F0"] = an.faces.with_zero;
  return r;
}

json class_record(const melonrg::DivergenceClass& c) {
  json r;
  r["E"] = c.external_legs;
  r["C_boundary"] = c.boundary_components;
  r["degree"] = melonrg::to_string(c.degree);
  r["omega"] = c.omega;
  r["family"] = melonrg::family_name(c.family);
  return r;
}

int run_verify(const std::string& suite) {
  const auto results = melonrg::verify_suite(suite);
  int failed = 0;
  for (const auto& r : results) {
    std::printf("%s  %-32s %s\n", r.pass ? "pass" : "FAIL", r.name.c_str(),
                r.detail.c_str());
    if (!r.pass) ++failed;
  }
  std::printf("%d/%zu checks passed\n", static_cast<int>(results.size()) - failed,
              results.size());
  return failed == 0 ? 0 : 1;
}

std::vector<double> parse_list(const std::string& csv) {
  std::vector<double> out;
  std::stringstream ss(csv);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    std::size_t pos = 0;
    const double v = std::stod(item, &pos);
    if (pos != item.size()) throw std::invalid_argument("bad number: " + item);
    out.push_back(v);
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  if (const char* threads = std::getenv("MELONRG_THREADS")) {
    char* end = nullptr;
    const long v = std::strtol(threads, &end, 10);
    if (end == threads || *end != '\0' || v < 1) {
      std::fprintf(stderr, "MELONRG_THREADS must be a positive integer\n");
      return 2;
    }
    // Single-threaded build: any cap >= 1 is honoured as written.
  }

  CLI::App app{"melonic tensor-model toolkit: graph power counting, exact series, self-energy fixed point, beta coefficients, holomorphic flow"};
  app.require_subcommand(1);
  int exit_code = 0;

  // ---- graph ----
  auto* graph = app.add_subcommand("graph", "coloured-graph analysis");
  graph->require_subcommand(1);
  {
    auto* analyze = graph->add_subcommand("analyze", "divergence data of one graph");
    auto file = std::make_shared<std::string>();
    auto out = std::make_shared<std::string>();
    analyze->add_option("file", *file, "graph JSON")->required();
    analyze->add_option("--out", *out, "output path (default stdout)");
    analyze->callback([file, out] {
      const auto g = melonrg::graph_from_json(melonrg::load_json_file(*file));
      write_text(*out, analysis_record(melonrg::analyze_graph(g)).dump(2) + "\n");
    });
  }
  {
    auto* census = graph->add_subcommand("census", "exhaustive isomorphism-class census");
    auto max_bubbles = std::make_shared<int>(2);
    auto closed = std::make_shared<bool>(false);
    auto out = std::make_shared<std::string>();
    census->add_option("--max-bubbles", *max_bubbles, "bubble budget")->required();
    census->add_flag("--closed", *closed, "vacuum classes only");
    census->add_option("--out", *out, "output path (default stdout)");
    census->callback([max_bubbles, closed, out] {
      const auto classes = *closed ? melonrg::exhaustive_closed_census(*max_bubbles)
                                   : melonrg::exhaustive_census(*max_bubbles);
      std::string body = "index,vertices,E,C_boundary,degree,omega,family,F,F0\n";
      for (std::size_t i = 0; i < classes.size(); ++i) {
        const auto an = melonrg::analyze_graph(classes[i]);
        body += std::to_string(i) + "," + std::to_string(classes[i].num_vertices()) +
                "," + std::to_string(an.external_legs) + "," +
                std::to_string(an.boundary_components) + "," +
                melonrg::to_string(an.degree) + "," + std::to_string(an.cls.omega) +
                "," + melonrg::family_name(an.cls.family) + "," +
                std::to_string(an.faces.total) + "," +
                std::to_string(an.faces.with_zero) + "\n";
      }
      write_text(*out, body);
    });
  }

  // ---- ifmap ----
  auto* ifmap = app.add_subcommand("ifmap", "intermediate-field conversion");
  ifmap->require_subcommand(1);
  {
    auto* convert = ifmap->add_subcommand("convert", "graph JSON <-> map JSON");
    auto file = std::make_shared<std::string>();
    auto to = std::make_shared<std::string>("auto");
    auto out = std::make_shared<std::string>();
    convert->add_option("file", *file, "input JSON")->required();
    convert->add_option("--to", *to, "map | graph | auto")
        ->check(CLI::IsMember({"map", "graph", "auto"}));
    convert->add_option("--out", *out, "output path (default stdout)");
    convert->callback([file, to, out] {
      const json j = melonrg::load_json_file(*file);
      std::string dir = *to;
      if (dir == "auto") {
        if (!j.contains("vertices") || !j.at("vertices").is_array() ||
            j.at("vertices").empty())
          throw std::invalid_argument("cannot infer direction; pass --to");
        dir = j.at("vertices")[0].is_object() ? "map" : "graph";
      }
      if (dir == "map") {
        const auto g = melonrg::graph_from_json(j);
        write_text(*out, melonrg::map_to_json(melonrg::to_if_map(g)).dump(2) + "\n");
      } else {
        const auto m = melonrg::map_from_json(j);
        write_text(*out, melonrg::graph_to_json(melonrg::from_if_map(m)).dump(2) + "\n");
      }
    });
  }
  {
    auto* classify = ifmap->add_subcommand("classify", "divergence data from the map");
    auto file = std::make_shared<std::string>();
    auto out = std::make_shared<std::string>();
    classify->add_option("file", *file, "map JSON")->required();
    classify->add_option("--out", *out, "output path (default stdout)");
    classify->callback([file, out] {
      const auto m = melonrg::map_from_json(melonrg::load_json_file(*file));
      write_text(*out, class_record(melonrg::classify_if(m)).dump(2) + "\n");
    });
  }

  // ---- series ----
  auto* series = app.add_subcommand("series", "exact melonic generating functions");
  series->require_subcommand(1);
  {
    auto* gamma4 = series->add_subcommand("gamma4", "four-point coefficient table");
    auto order = std::make_shared<int>(20);
    auto out = std::make_shared<std::string>();
    gamma4->add_option("--order", *order, "top order N")->required();
    gamma4->add_option("--format", "csv (the only format)")
        ->check(CLI::IsMember({"csv"}));
    gamma4->add_option("--out", *out, "output path (default stdout)");
    gamma4->callback([order, out] {
      if (*order < 1) throw std::invalid_argument("order must be >= 1");
      std::string body = "n,coefficient,asymptotic,ratio\n";
      for (int n = 1; n <= *order; ++n) {
        body += std::to_string(n) + "," +
                melonrg::to_string(melonrg::gamma4_gf_coefficient(n)) + "," +
                num(melonrg::gamma4_asymptotic(n)) + "," +
                num(melonrg::gamma4_asymptotic_ratio(n)) + "\n";
      }
      write_text(*out, body);
    });
  }
  {
    auto* sigma = series->add_subcommand("sigma", "two-point coefficient table");
    auto order = std::make_shared<int>(20);
    auto out = std::make_shared<std::string>();
    sigma->add_option("--order", *order, "top order N")->required();
    sigma->add_option("--out", *out, "output path (default stdout)");
    sigma->callback([order, out] {
      if (*order < 1) throw std::invalid_argument("order must be >= 1");
      std::string body = "n,coefficient\n";
      for (int n = 1; n <= *order; ++n)
        body += std::to_string(n) + "," +
                melonrg::to_string(melonrg::sigma_gf_coefficient(n)) + "\n";
      write_text(*out, body);
    });
  }

  // ---- sde ----
  auto* sde = app.add_subcommand("sde", "mass-renormalized self-energy fixed point");
  sde->require_subcommand(1);
  {
    auto* solve = sde->add_subcommand("solve", "solve and report");
    auto config = std::make_shared<std::string>();
    auto out = std::make_shared<std::string>();
    auto format = std::make_shared<std::string>("json");
    solve->add_option("--config", *config, "config JSON")->required();
    solve->add_option("--format", *format, "json | csv")
        ->check(CLI::IsMember({"json", "csv"}));
    solve->add_option("--out", *out, "output path (default stdout)");
    solve->callback([config, out, format] {
      const auto cfg = melonrg::sde_config_from_json(melonrg::load_json_file(*config));
      const auto p = melonrg::model_params(cfg);
      const auto sig = melonrg::solve_sigma_mr(p, cfg.tol);
      const double dm = melonrg::delta_m(p, sig);
      const auto eff = melonrg::effective_constants(p, sig);
      if (*format == "csv") {
        std::string body = "n,sigma\n";
        for (long n = 0; n <= sig.N; ++n)
          body += std::to_string(n) + "," + num(sig.at(n)) + "\n";
        write_text(*out, body);
        return;
      }
      json r;
      r["residual"] = sig.residual;
      r["iterations"] = sig.iterations;
      r["N"] = sig.N;
      json sv = json::array();
      for (long n = 0; n <= sig.N; ++n) sv.push_back(sig.at(n));
      r["sigma"] = std::move(sv);
      r["delta_m"] = dm;
      r["m_b_sq"] = melonrg::m_b_sq(p, dm);
      json ej = json::array(), zj = json::array(), gz = json::array(), gj = json::array();
      for (int j = -1; j <= p.cutoffs.j_max(); ++j) {
        ej.push_back(j);
        zj.push_back(eff.Z_at(j));
        gz.push_back(eff.gZ2_at(j));
        gj.push_back(eff.g_at(j));
      }
      r["effective"] = {{"j", std::move(ej)}, {"Z", std::move(zj)},
                        {"gZ2", std::move(gz)}, {"g", std::move(gj)}};
      write_text(*out, r.dump(2) + "\n");
    });
  }

  // ---- beta ----
  auto* beta = app.add_subcommand("beta", "discrete flow coefficients");
  beta->require_subcommand(1);
  {
    auto* table = beta->add_subcommand("table", "per-slice beta data");
    auto range = std::make_shared<std::string>("1..8");
    auto M = std::make_shared<int>(2);
    auto mrsq = std::make_shared<double>(1.0);
    auto out = std::make_shared<std::string>();
    table->add_option("--j-range", *range, "lo..hi (default 1..8)");
    table->add_option("--M", *M, "slice ratio (default 2)");
    table->add_option("--m-r-sq", *mrsq, "renormalized mass^2 (default 1)");
    table->add_option("--out", *out, "output path (default stdout)");
    table->callback([range, M, mrsq, out] {
      const auto dots = range->find("..");
      if (dots == std::string::npos)
        throw std::invalid_argument("--j-range must be lo..hi");
      const int lo = std::stoi(range->substr(0, dots));
      const int hi = std::stoi(range->substr(dots + 2));
      if (lo < 0 || hi < lo) throw std::invalid_argument("bad --j-range");
      const melonrg::CutoffFamily fam(*M, hi + 2);
      const double b2 = melonrg::beta2_integral(fam);
      std::string body = "j,K_j,A,A_tilde,beta_j,beta2,abs_err\n";
      for (int j = lo; j <= hi; ++j) {
        const auto bc = melonrg::beta_coefficients(fam, *mrsq, j);
        body += std::to_string(j) + "," + num(bc.K_j) + "," + num(bc.A) + "," +
                num(bc.A_tilde) + "," + num(bc.beta_j) + "," + num(b2) + "," +
                num(std::abs(bc.beta_j - b2)) + "\n";
      }
      write_text(*out, body);
    });
  }
  {
    auto* b2cmd = beta->add_subcommand("beta2", "continuum quadratic coefficient");
    auto M = std::make_shared<int>(2);
    b2cmd->add_option("--M", *M, "slice ratio (default 2)");
    b2cmd->callback([M] {
      std::printf("%s\n", num(melonrg::beta2_integral(melonrg::CutoffFamily(*M, 2))).c_str());
    });
  }

  // ---- flow ----
  auto* flow = app.add_subcommand("flow", "holomorphic coupling flow");
  flow->require_subcommand(1);
  {
    auto* run = flow->add_subcommand("run", "integrate one trajectory");
    auto beta2 = std::make_shared<double>(-1.0);
    auto beta3 = std::make_shared<double>(0.0);
    auto higher = std::make_shared<std::string>();
    auto gre = std::make_shared<double>(0.0);
    auto gim = std::make_shared<double>(0.0);
    auto T = std::make_shared<double>(100.0);
    auto tol = std::make_shared<double>(1e-10);
    auto radius = std::make_shared<double>(0.0);
    auto out = std::make_shared<std::string>();
    run->add_option("--beta2", *beta2, "quadratic coefficient (< 0)")->required();
    run->add_option("--beta3", *beta3, "cubic coefficient");
    run->add_option("--higher", *higher, "comma list c4,c5,...");
    run->add_option("--g-re", *gre, "Re g_r")->required();
    run->add_option("--g-im", *gim, "Im g_r");
    run->add_option("--T", *T, "horizon (default 100)");
    run->add_option("--tol", *tol, "step tolerance (default 1e-10)");
    run->add_option("--escape-radius", *radius, "stop when |g| exceeds this");
    run->add_option("--out", *out, "trajectory CSV path (default stdout)");
    run->callback([=] {
      melonrg::FlowProblem fp{*beta2, *beta3, parse_list(*higher), {*gre, *gim}};
      const auto traj = melonrg::integrate(fp, *T, *tol, *radius);
      std::string body = "t,re,im\n";
      for (const auto& s : traj.samples)
        body += num(s.t) + "," + num(s.g.real()) + "," + num(s.g.imag()) + "\n";
      write_text(*out, body);
      std::fprintf(stderr, "accepted=%ld rejected=%ld escaped=%d\n", traj.accepted,
                   traj.rejected, traj.escaped ? 1 : 0);
    });
  }
  {
    auto* domains = flow->add_subcommand("domains", "boundary and sample points");
    auto kind = std::make_shared<std::string>();
    auto eps = std::make_shared<double>(0.1);
    auto beta32 = std::make_shared<double>(0.0);
    auto samples = std::make_shared<int>(256);
    auto seed = std::make_shared<unsigned>(12345);
    auto out = std::make_shared<std::string>();
    domains->add_option("--kind", *kind, "omega | cardioid | heps")
        ->required()
        ->check(CLI::IsMember({"omega", "cardioid", "heps"}));
    domains->add_option("--eps", *eps, "size parameter")->required();
    domains->add_option("--beta32", *beta32, "beta3/beta2 (heps only)");
    domains->add_option("--samples", *samples, "points per class (default 256)");
    domains->add_option("--seed", *seed, "sample seed (default 12345)");
    domains->add_option("--out", *out, "output path (default stdout)");
    domains->callback([=] {
      melonrg::DomainSpec spec;
      spec.kind = *kind == "omega"   ? melonrg::DomainKind::Omega
                  : *kind == "cardioid" ? melonrg::DomainKind::Cardioid
                                        : melonrg::DomainKind::Heps;
      spec.eps = *eps;
      spec.beta32 = *beta32;
      const double pi = 3.14159265358979323846;
      std::string body = "type,re,im\n";
      for (int k = 0; k < *samples; ++k) {
        const double th = -pi + 2.0 * pi * (k + 0.5) / *samples;
        const double r = melonrg::domain_radius(spec, th);
        body += "boundary," + num(r * std::cos(th)) + "," + num(r * std::sin(th)) + "\n";
      }
      std::mt19937 rng(*seed);
      std::uniform_real_distribution<double> uth(-pi, pi);
      std::uniform_real_distribution<double> ur(0.0, 1.0);
      for (int k = 0; k < *samples; ++k) {
        const double th = uth(rng);
        const double r = ur(rng) * melonrg::domain_radius(spec, th);
        body += "sample," + num(r * std::cos(th)) + "," + num(r * std::sin(th)) + "\n";
      }
      write_text(*out, body);
    });
  }
  {
    auto* fv = flow->add_subcommand("verify", "flow property suite");
    fv->callback([&exit_code] { exit_code = run_verify("flow"); });
  }

  // ---- verify ----
  {
    auto* verify = app.add_subcommand("verify", "named property-check suites");
    auto suite = std::make_shared<std::string>("all");
    verify->add_option("--suite", *suite, "all | graphs | series | sde | flow")
        ->check(CLI::IsMember({"all", "graphs", "series", "sde", "flow"}));
    verify->callback([suite, &exit_code] { exit_code = run_verify(*suite); });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;  // help/version exit 0, parse failures exit 2
  } catch (const std::invalid_argument& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return exit_code;
}
