#include "melonrg/if_map.hpp"

#include <algorithm>
#include <map>
#include <queue>
#include <stdexcept>

namespace melonrg {

void validate_map(const ColouredMap& m) {
    int ne = m.num_edges();
    int nv = m.num_vertices();
    if (static_cast<int>(m.ciliated.size()) != nv)
        throw std::invalid_argument("map: ciliated/rotation size mismatch");
    for (int e = 0; e < ne; ++e)
        if (m.edge_colour[e] < 1 || m.edge_colour[e] > kRank)
            throw std::invalid_argument("map: edge colour out of range");
    std::vector<int> hits(2 * ne, 0);
    for (int v = 0; v < nv; ++v) {
        for (int d : m.rotation[v]) {
            if (d < 0 || d >= 2 * ne)
                throw std::invalid_argument("map: dart out of range");
            ++hits[d];
        }
    }
    for (int d = 0; d < 2 * ne; ++d)
        if (hits[d] != 1)
            throw std::invalid_argument("map: darts must cover each edge end exactly once");
}

int cilia_count(const ColouredMap& m) {
    return static_cast<int>(std::count(m.ciliated.begin(), m.ciliated.end(), true));
}

namespace {

std::vector<int> dart_vertex_table(const ColouredMap& m) {
    std::vector<int> dv(2 * m.num_edges(), -1);
    for (int v = 0; v < m.num_vertices(); ++v)
        for (int d : m.rotation[v]) dv[d] = v;
    return dv;
}

std::vector<int> vertex_component_labels(const ColouredMap& m, int* count) {
    auto dv = dart_vertex_table(m);
    int nv = m.num_vertices();
    std::vector<int> comp(nv, -1);
    int k = 0;
    std::vector<int> stack;
    for (int s = 0; s < nv; ++s) {
        if (comp[s] != -1) continue;
        comp[s] = k;
        stack.push_back(s);
        while (!stack.empty()) {
            int v = stack.back();
            stack.pop_back();
            for (int d : m.rotation[v]) {
                int w = dv[d ^ 1];
                if (comp[w] == -1) {
                    comp[w] = k;
                    stack.push_back(w);
                }
            }
        }
        ++k;
    }
    *count = k;
    return comp;
}

}  // namespace

std::vector<std::vector<int>> map_components(const ColouredMap& m) {
    int k = 0;
    auto comp = vertex_component_labels(m, &k);
    std::vector<std::vector<int>> out(k);
    for (int v = 0; v < m.num_vertices(); ++v) out[comp[v]].push_back(v);
    return out;
}

bool is_melonic_map(const ColouredMap& m) {
    validate_map(m);
    int k = 0;
    auto comp = vertex_component_labels(m, &k);
    std::vector<long> verts(k, 0), edges2(k, 0);
    for (int v = 0; v < m.num_vertices(); ++v) {
        ++verts[comp[v]];
        edges2[comp[v]] += static_cast<long>(m.rotation[v].size());
    }
    for (int c = 0; c < k; ++c)
        if (edges2[c] != 2 * (verts[c] - 1)) return false;
    return true;
}

ColouredMap reduce_chains(const ColouredMap& m) {
    validate_map(m);
    auto dv = dart_vertex_table(m);
    std::vector<std::vector<int>> rot = m.rotation;
    std::vector<char> vertex_alive(m.num_vertices(), 1);
    std::vector<char> edge_alive(m.num_edges(), 1);
    std::vector<int> queue;
    for (int v = 0; v < m.num_vertices(); ++v)
        if (!m.ciliated[v] && rot[v].size() == 1) queue.push_back(v);
    while (!queue.empty()) {
        int v = queue.back();
        queue.pop_back();
        if (!vertex_alive[v] || m.ciliated[v] || rot[v].size() != 1) continue;
        int d = rot[v][0];
        int e = d / 2;
        int w = dv[d ^ 1];
        vertex_alive[v] = 0;
        edge_alive[e] = 0;
        rot[v].clear();
        auto& rw = rot[w];
        rw.erase(std::find(rw.begin(), rw.end(), d ^ 1));
        if (vertex_alive[w] && !m.ciliated[w] && rw.size() == 1) queue.push_back(w);
    }
    ColouredMap out;
    std::vector<int> edge_new(m.num_edges(), -1);
    for (int e = 0; e < m.num_edges(); ++e) {
        if (!edge_alive[e]) continue;
        edge_new[e] = out.num_edges();
        out.edge_colour.push_back(m.edge_colour[e]);
    }
    for (int v = 0; v < m.num_vertices(); ++v) {
        if (!vertex_alive[v]) continue;
        std::vector<int> r;
        for (int d : rot[v]) r.push_back(2 * edge_new[d / 2] + (d & 1));
        out.rotation.push_back(std::move(r));
        out.ciliated.push_back(m.ciliated[v]);
    }
    return out;
}

ColouredMap to_if_map(const ColouredGraph& g) {
    validate(g);
    auto bubbles = interaction_bubbles(g);
    int ne = static_cast<int>(bubbles.size());
    ColouredMap m;
    m.edge_colour.resize(ne);
    // Dart 2e+end is the partner link (white[end], black[end]) of bubble e.
    std::vector<int> link_white(2 * ne), link_black(2 * ne);
    std::vector<int> dart_of_white(g.num_vertices(), -1);
    for (int e = 0; e < ne; ++e) {
        m.edge_colour[e] = bubbles[e].colour;
        for (int end = 0; end < 2; ++end) {
            link_white[2 * e + end] = bubbles[e].white[end];
            link_black[2 * e + end] = bubbles[e].black[end];
            dart_of_white[bubbles[e].white[end]] = 2 * e + end;
        }
    }
    std::vector<char> seen(2 * ne, 0);
    // Open sequences start at links whose white end carries an external leg
    // and stop at an external black end; the gap becomes the cilium.
    for (int d0 = 0; d0 < 2 * ne; ++d0) {
        if (seen[d0] || g.adj[link_white[d0]][0] != -1) continue;
        std::vector<int> seq;
        int d = d0;
        while (true) {
            seq.push_back(d);
            seen[d] = 1;
            int u = g.adj[link_black[d]][0];
            if (u < 0) break;
            d = dart_of_white[u];
        }
        m.rotation.push_back(std::move(seq));
        m.ciliated.push_back(true);
    }
    // Remaining darts close up into cycles; each becomes a plain vertex.
    for (int d0 = 0; d0 < 2 * ne; ++d0) {
        if (seen[d0]) continue;
        std::vector<int> seq;
        int d = d0;
        do {
            seq.push_back(d);
            seen[d] = 1;
            d = dart_of_white[g.adj[link_black[d]][0]];
        } while (d != d0);
        m.rotation.push_back(std::move(seq));
        m.ciliated.push_back(false);
    }
    for (int r = 0; r < g.rings; ++r) {
        m.rotation.emplace_back();
        m.ciliated.push_back(false);
    }
    return m;
}

ColouredGraph from_if_map(const ColouredMap& m) {
    validate_map(m);
    ColouredGraph g;
    for (int e = 0; e < m.num_edges(); ++e)
        g = disjoint_union(g, build_quartic_vertex(m.edge_colour[e]));
    // Bubble e sits on tensor vertices 4e..4e+3; dart 2e+end has white
    // tensor vertex 4e+2*end and black tensor vertex 4e+2*end+1.
    auto white_of = [](int d) { return 4 * (d / 2) + 2 * (d & 1); };
    auto black_of = [](int d) { return 4 * (d / 2) + 2 * (d & 1) + 1; };
    for (int v = 0; v < m.num_vertices(); ++v) {
        const auto& seq = m.rotation[v];
        int d = static_cast<int>(seq.size());
        if (d == 0) {
            if (m.ciliated[v])
                throw std::invalid_argument("ciliated vertex with no half edge has no graph form");
            ++g.rings;
            continue;
        }
        // The corner between consecutive links is a propagator joining the
        // black end of one to the white end of the next; a cilium leaves
        // that corner open as two external legs.
        int corners = m.ciliated[v] ? d - 1 : d;
        for (int k = 0; k < corners; ++k)
            glue(g, black_of(seq[k]), white_of(seq[(k + 1) % d]));
    }
    return g;
}

DivergenceClass classify_if(const ColouredMap& m) {
    validate_map(m);
    int k = 0;
    vertex_component_labels(m, &k);
    if (k != 1) throw std::invalid_argument("classification requires a connected map");
    int cilia = cilia_count(m);
    bool melonic = is_melonic_map(m);
    DivergenceClass out;
    if (melonic && cilia == 0) {
        out.external_legs = 0;
        out.boundary_components = 0;
        out.degree = 0;
        out.omega = 5;
        out.family = Family::kVacuumMelon;
        return out;
    }
    if (melonic && cilia == 1) {
        out.external_legs = 2;
        out.boundary_components = 1;
        out.degree = 0;
        out.omega = 2;
        out.family = Family::kTwoPointMelon;
        return out;
    }
    long darts = 0;
    for (const auto& r : m.rotation) darts += static_cast<long>(r.size());
    bool unicyclic = darts / 2 == m.num_vertices();
    if (cilia == 0 && unicyclic) {
        // Prune to the cycle and inspect its colours.
        ColouredMap core = reduce_chains(m);
        bool mono = true;
        for (int c : core.edge_colour) mono = mono && c == core.edge_colour[0];
        out.external_legs = 0;
        out.boundary_components = 0;
        out.degree = mono ? 3 : 5;
        out.omega = mono ? 2 : 0;
        out.family = mono ? Family::kVacuumNecklaceMonochrome : Family::kVacuumNecklaceMixed;
        return out;
    }
    if (melonic && cilia == 2) {
        // The core of a two-cilia tree is the path joining the cilia; the
        // four-point function diverges exactly when that path is monochrome.
        ColouredMap core = reduce_chains(m);
        bool mono = !core.edge_colour.empty();
        for (int c : core.edge_colour) mono = mono && c == core.edge_colour[0];
        if (mono) {
            out.external_legs = 4;
            out.boundary_components = 1;
            out.degree = 0;
            out.omega = 0;
            out.family = Family::kFourPointMelon;
            return out;
        }
    }
    return classify(from_if_map(m));
}

// -- canonical encoding ------------------------------------------------------

namespace {

std::string encode_component_from_root(const ColouredMap& m, const std::vector<int>& dv,
                                       int root_dart) {
    std::vector<int> vlabel(m.num_vertices(), -1);
    std::vector<int> elabel(m.num_edges(), -1);
    std::vector<int> entry(m.num_vertices(), 0);
    std::vector<int> order;
    int root_v = dv[root_dart];
    vlabel[root_v] = 0;
    {
        const auto& r = m.rotation[root_v];
        entry[root_v] = static_cast<int>(std::find(r.begin(), r.end(), root_dart) - r.begin());
    }
    order.push_back(root_v);
    int next_e = 0;
    std::string out;
    for (std::size_t qi = 0; qi < order.size(); ++qi) {
        int v = order[qi];
        const auto& r = m.rotation[v];
        int d = static_cast<int>(r.size());
        // A cilium pins the reading frame; otherwise start at the entry dart.
        int start = m.ciliated[v] ? 0 : entry[v];
        out.push_back(m.ciliated[v] ? 1 : 0);
        out.push_back(static_cast<char>(d));
        for (int k = 0; k < d; ++k) {
            int dart = r[(start + k) % d];
            int e = dart / 2;
            if (elabel[e] == -1) elabel[e] = next_e++;
            int w = dv[dart ^ 1];
            if (vlabel[w] == -1) {
                vlabel[w] = static_cast<int>(order.size());
                const auto& rw = m.rotation[w];
                entry[w] = static_cast<int>(std::find(rw.begin(), rw.end(), dart ^ 1) -
                                            rw.begin());
                order.push_back(w);
            }
            out.push_back(static_cast<char>(elabel[e]));
            out.push_back(static_cast<char>(m.edge_colour[e]));
            out.push_back(static_cast<char>(vlabel[w]));
        }
    }
    return out;
}

}  // namespace

std::string map_canonical_key(const ColouredMap& m) {
    validate_map(m);
    if (m.num_vertices() > 200 || m.num_edges() > 100)
        throw std::invalid_argument("map_canonical_key supports at most 200 vertices");
    auto dv = dart_vertex_table(m);
    int k = 0;
    auto comp = vertex_component_labels(m, &k);
    int bare = 0;
    std::vector<std::string> keys;
    std::vector<char> component_done(k, 0);
    for (int v = 0; v < m.num_vertices(); ++v)
        if (m.rotation[v].empty()) {
            if (m.ciliated[v])
                keys.push_back(std::string(1, 2));  // lone ciliated vertex
            else
                ++bare;
            component_done[comp[v]] = 1;
        }
    for (int c = 0; c < k; ++c) {
        if (component_done[c]) continue;
        std::string best;
        bool have = false;
        for (int d = 0; d < 2 * m.num_edges(); ++d) {
            if (comp[dv[d]] != c) continue;
            std::string enc = encode_component_from_root(m, dv, d);
            if (!have || enc < best) {
                best = std::move(enc);
                have = true;
            }
        }
        keys.push_back(std::move(best));
    }
    std::sort(keys.begin(), keys.end());
    std::string out;
    out.push_back(static_cast<char>(bare));
    for (auto& s : keys) {
        out.push_back(static_cast<char>(0xFE));
        out += s;
    }
    return out;
}

bool maps_isomorphic(const ColouredMap& a, const ColouredMap& b) {
    return map_canonical_key(a) == map_canonical_key(b);
}

}  // namespace melonrg
