#pragma once
// JSON codecs for graphs, maps, and solver configuration, plus file helpers
// with position diagnostics.

#include <string>

#include "json.hpp"
#include "melonrg/coloured_graph.hpp"
#include "melonrg/if_map.hpp"
#include "melonrg/sde.hpp"

namespace melonrg {

// {"D":5, "vertices":[{"id":0,"parity":"black"},...],
//  "edges":[[u,v,colour],...], "external":[[v,0],...]}
// plus an optional "rings" count for graphs carrying bare propagator loops.
nlohmann::json graph_to_json(const ColouredGraph& g);
ColouredGraph graph_from_json(const nlohmann::json& j);

// {"vertices":[[h1,h2,...],...], "edges":[[hA,hB,colour],...],
//  "cilia":[[v,pos],...]}  (half-edge ids are arbitrary integers; pos is the
// rotation slot in front of which the cilium sits).
nlohmann::json map_to_json(const ColouredMap& m);
ColouredMap map_from_json(const nlohmann::json& j);

struct SdeConfig {
  int M = 2;
  int j_max = 2;
  double a = 2.5;
  double eps = 1.5;
  double m_r_sq = 1.0;
  double g_b = 0.01;
  double Z_b = 1.0;
  double tol = 1e-12;
};

// {M, j_max, a, eps, m_r_sq, g_b, Z_b, tol}; unknown keys rejected.
SdeConfig sde_config_from_json(const nlohmann::json& j);
nlohmann::json sde_config_to_json(const SdeConfig& c);

ModelParams model_params(const SdeConfig& c);

// Parses the file, rethrowing parse errors with the file name and byte
// position attached.
nlohmann::json load_json_file(const std::string& path);
void save_json_file(const std::string& path, const nlohmann::json& j);

}  // namespace melonrg
