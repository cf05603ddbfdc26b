#pragma once
// Named property-check suites: fast cross-module invariant runs for the
// command-line front end.  Each check reports pass/fail with the tolerance
// it was measured against.

#include <string>
#include <utility>
#include <vector>

#include "melonrg/coloured_graph.hpp"

namespace melonrg {

struct CheckResult {
  std::string name;
  bool pass = false;
  std::string detail;  // measured value and tolerance
};

// Constructed representatives of the five divergent rows together with the
// expected (external legs, boundary components, degree, omega).
struct TableRow {
  ColouredGraph graph;
  int external_legs;
  int boundary_components;
  Rational degree;
  int omega;
};
std::vector<TableRow> divergence_table_representatives();

// suite: "graphs", "series", "sde", "flow", or "all".
std::vector<CheckResult> verify_suite(const std::string& suite);

}  // namespace melonrg
