#include "melonrg/io_json.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <stdexcept>

namespace melonrg {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& where, const std::string& what) {
  throw std::invalid_argument(where + ": " + what);
}

int get_int(const json& j, const std::string& where) {
  if (!j.is_number_integer()) fail(where, "expected an integer");
  return j.get<int>();
}

}  // namespace

json graph_to_json(const ColouredGraph& g) {
  json j;
  j["D"] = kRank;
  json verts = json::array();
  for (int v = 0; v < g.num_vertices(); ++v)
    verts.push_back({{"id", v}, {"parity", g.parity[v] ? "black" : "white"}});
  j["vertices"] = std::move(verts);
  json edges = json::array();
  for (int v = 0; v < g.num_vertices(); ++v)
    for (int c = 0; c < kColours; ++c) {
      const int w = g.adj[v][c];
      if (w >= v) edges.push_back({v, w, c});  // each undirected edge once
    }
  j["edges"] = std::move(edges);
  json ext = json::array();
  for (int v : external_vertices(g)) ext.push_back({v, 0});
  j["external"] = std::move(ext);
  if (g.rings != 0) j["rings"] = g.rings;
  return j;
}

ColouredGraph graph_from_json(const json& j) {
  if (!j.is_object()) fail("graph", "expected an object");
  if (j.contains("D") && get_int(j.at("D"), "D") != kRank)
    fail("D", "only rank 5 is supported");
  if (!j.contains("vertices") || !j.at("vertices").is_array())
    fail("vertices", "missing or not an array");
  const json& verts = j.at("vertices");
  const int n = static_cast<int>(verts.size());
  ColouredGraph g;
  g.parity.assign(n, false);
  g.adj.assign(n, {});
  for (auto& row : g.adj) row.fill(-1);
  std::vector<bool> seen(n, false);
  for (std::size_t i = 0; i < verts.size(); ++i) {
    const std::string where = "vertices[" + std::to_string(i) + "]";
    const json& v = verts[i];
    if (!v.is_object() || !v.contains("id") || !v.contains("parity"))
      fail(where, "expected {id, parity}");
    const int id = get_int(v.at("id"), where + ".id");
    if (id < 0 || id >= n) fail(where + ".id", "out of range");
    if (seen[id]) fail(where + ".id", "duplicate id");
    seen[id] = true;
    const std::string p = v.at("parity").get<std::string>();
    if (p != "black" && p != "white") fail(where + ".parity", "must be black or white");
    g.parity[id] = (p == "black");
  }
  if (!j.contains("edges") || !j.at("edges").is_array())
    fail("edges", "missing or not an array");
  const json& edges = j.at("edges");
  for (std::size_t i = 0; i < edges.size(); ++i) {
    const std::string where = "edges[" + std::to_string(i) + "]";
    const json& e = edges[i];
    if (!e.is_array() || e.size() != 3) fail(where, "expected [u, v, colour]");
    const int u = get_int(e[0], where + "[0]");
    const int v = get_int(e[1], where + "[1]");
    const int c = get_int(e[2], where + "[2]");
    if (u < 0 || u >= n || v < 0 || v >= n) fail(where, "vertex out of range");
    if (c < 0 || c >= kColours) fail(where + "[2]", "colour out of range");
    if (g.adj[u][c] != -1 || g.adj[v][c] != -1)
      fail(where, "colour slot already occupied");
    g.adj[u][c] = v;
    g.adj[v][c] = u;
  }
  std::vector<bool> declared(static_cast<std::size_t>(n), false);
  if (j.contains("external")) {
    const json& ext = j.at("external");
    if (!ext.is_array()) fail("external", "not an array");
    for (std::size_t i = 0; i < ext.size(); ++i) {
      const std::string where = "external[" + std::to_string(i) + "]";
      const json& e = ext[i];
      if (!e.is_array() || e.size() != 2) fail(where, "expected [v, 0]");
      const int v = get_int(e[0], where + "[0]");
      if (v < 0 || v >= n) fail(where + "[0]", "vertex out of range");
      if (get_int(e[1], where + "[1]") != 0) fail(where + "[1]", "colour must be 0");
      if (g.adj[v][0] != -1) fail(where, "vertex has an internal propagator");
      if (declared[static_cast<std::size_t>(v)]) fail(where, "duplicate external vertex");
      declared[static_cast<std::size_t>(v)] = true;
    }
  }
  // the declared legs must be exactly the unfilled colour-0 slots
  for (int v = 0; v < n; ++v)
    if (g.adj[v][0] == -1 && !declared[static_cast<std::size_t>(v)])
      fail("external", "vertex " + std::to_string(v) + " has an undeclared open slot");
  g.rings = j.contains("rings") ? get_int(j.at("rings"), "rings") : 0;
  if (g.rings < 0) fail("rings", "negative");
  validate(g);
  return g;
}

json map_to_json(const ColouredMap& m) {
  json j;
  json verts = json::array();
  for (const auto& rot : m.rotation) {
    json r = json::array();
    for (int d : rot) r.push_back(d);
    verts.push_back(std::move(r));
  }
  j["vertices"] = std::move(verts);
  json edges = json::array();
  for (int e = 0; e < m.num_edges(); ++e)
    edges.push_back({2 * e, 2 * e + 1, m.edge_colour[e]});
  j["edges"] = std::move(edges);
  json cilia = json::array();
  for (int v = 0; v < m.num_vertices(); ++v)
    if (m.ciliated[v]) cilia.push_back({v, 0});
  j["cilia"] = std::move(cilia);
  return j;
}

ColouredMap map_from_json(const json& j) {
  if (!j.is_object()) fail("map", "expected an object");
  if (!j.contains("edges") || !j.at("edges").is_array())
    fail("edges", "missing or not an array");
  if (!j.contains("vertices") || !j.at("vertices").is_array())
    fail("vertices", "missing or not an array");
  const json& edges = j.at("edges");
  ColouredMap m;
  std::map<long, int> dart_of_half;  // half-edge id -> dart 2*edge+end
  for (std::size_t i = 0; i < edges.size(); ++i) {
    const std::string where = "edges[" + std::to_string(i) + "]";
    const json& e = edges[i];
    if (!e.is_array() || e.size() != 3) fail(where, "expected [hA, hB, colour]");
    const long ha = get_int(e[0], where + "[0]");
    const long hb = get_int(e[1], where + "[1]");
    const int c = get_int(e[2], where + "[2]");
    if (c < 1 || c > kRank) fail(where + "[2]", "colour out of range");
    if (ha == hb) fail(where, "identical half-edge ids");
    if (dart_of_half.count(ha) || dart_of_half.count(hb))
      fail(where, "half-edge id reused");
    const int edge = m.num_edges();
    dart_of_half[ha] = 2 * edge;
    dart_of_half[hb] = 2 * edge + 1;
    m.edge_colour.push_back(c);
  }
  const json& verts = j.at("vertices");
  m.rotation.resize(verts.size());
  m.ciliated.assign(verts.size(), false);
  for (std::size_t v = 0; v < verts.size(); ++v) {
    const std::string where = "vertices[" + std::to_string(v) + "]";
    if (!verts[v].is_array()) fail(where, "expected an array of half-edge ids");
    for (const json& h : verts[v]) {
      const long id = get_int(h, where);
      auto it = dart_of_half.find(id);
      if (it == dart_of_half.end()) fail(where, "unknown half-edge id");
      m.rotation[v].push_back(it->second);
    }
  }
  if (j.contains("cilia")) {
    const json& cilia = j.at("cilia");
    if (!cilia.is_array()) fail("cilia", "not an array");
    for (std::size_t i = 0; i < cilia.size(); ++i) {
      const std::string where = "cilia[" + std::to_string(i) + "]";
      const json& e = cilia[i];
      if (!e.is_array() || e.size() != 2) fail(where, "expected [v, pos]");
      const int v = get_int(e[0], where + "[0]");
      const int pos = get_int(e[1], where + "[1]");
      if (v < 0 || v >= m.num_vertices()) fail(where + "[0]", "vertex out of range");
      if (m.ciliated[v]) fail(where, "vertex already ciliated");
      const int deg = static_cast<int>(m.rotation[v].size());
      if (pos < 0 || (deg > 0 && pos >= deg) || (deg == 0 && pos != 0))
        fail(where + "[1]", "position out of range");
      // The stored convention keeps the cilium in front of slot 0.
      std::rotate(m.rotation[v].begin(), m.rotation[v].begin() + pos,
                  m.rotation[v].end());
      m.ciliated[v] = true;
    }
  }
  validate_map(m);
  return m;
}

SdeConfig sde_config_from_json(const json& j) {
  if (!j.is_object()) fail("config", "expected an object");
  SdeConfig c;
  for (auto it = j.begin(); it != j.end(); ++it) {
    const std::string& k = it.key();
    if (k == "M")
      c.M = get_int(it.value(), "M");
    else if (k == "j_max")
      c.j_max = get_int(it.value(), "j_max");
    else if (k == "a")
      c.a = it.value().get<double>();
    else if (k == "eps")
      c.eps = it.value().get<double>();
    else if (k == "m_r_sq")
      c.m_r_sq = it.value().get<double>();
    else if (k == "g_b")
      c.g_b = it.value().get<double>();
    else if (k == "Z_b")
      c.Z_b = it.value().get<double>();
    else if (k == "tol")
      c.tol = it.value().get<double>();
    else
      fail(k, "unknown configuration key");
  }
  return c;
}

json sde_config_to_json(const SdeConfig& c) {
  return json{{"M", c.M},           {"j_max", c.j_max}, {"a", c.a},
              {"eps", c.eps},       {"m_r_sq", c.m_r_sq}, {"g_b", c.g_b},
              {"Z_b", c.Z_b},       {"tol", c.tol}};
}

ModelParams model_params(const SdeConfig& c) {
  return ModelParams{c.g_b, c.Z_b, c.m_r_sq, CutoffFamily(c.M, c.j_max, c.a, c.eps)};
}

json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument(path + ": cannot open");
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw std::invalid_argument(path + ": " + e.what());
  }
}

void save_json_file(const std::string& path, const json& j) {
  std::ofstream out(path);
  if (!out) throw std::invalid_argument(path + ": cannot open for writing");
  out << j.dump(2) << "\n";
}

}  // namespace melonrg
