#include "melonrg/coloured_graph.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <stdexcept>

namespace melonrg {

std::string family_name(Family f) {
    switch (f) {
        case Family::kFourPointMelon: return "four-point-melon";
        case Family::kTwoPointMelon: return "two-point-melon";
        case Family::kVacuumMelon: return "vacuum-melon";
        case Family::kVacuumNecklaceMonochrome: return "vacuum-necklace-monochrome";
        case Family::kVacuumNecklaceMixed: return "vacuum-necklace-mixed";
        case Family::kConvergent: return "convergent";
    }
    return "unknown";
}

// -- construction ------------------------------------------------------------

ColouredGraph build_quartic_vertex(int colour) {
    if (colour < 1 || colour > kRank)
        throw std::invalid_argument("quartic vertex colour must be in 1..5");
    ColouredGraph g;
    g.parity = {false, true, false, true};  // w1, b1, w2, b2
    g.adj.assign(4, {});
    for (auto& a : g.adj) a.fill(-1);
    for (int c = 1; c <= kRank; ++c) {
        if (c == colour) continue;
        g.adj[0][c] = 1;
        g.adj[1][c] = 0;
        g.adj[2][c] = 3;
        g.adj[3][c] = 2;
    }
    g.adj[0][colour] = 3;
    g.adj[3][colour] = 0;
    g.adj[2][colour] = 1;
    g.adj[1][colour] = 2;
    return g;
}

void glue(ColouredGraph& g, int va, int vb) {
    int n = g.num_vertices();
    if (va < 0 || vb < 0 || va >= n || vb >= n || va == vb)
        throw std::invalid_argument("glue: bad vertex indices");
    if (g.adj[va][0] != -1 || g.adj[vb][0] != -1)
        throw std::invalid_argument("glue: both vertices must carry external legs");
    if (g.parity[va] == g.parity[vb])
        throw std::invalid_argument("glue: endpoints must have opposite parity");
    g.adj[va][0] = vb;
    g.adj[vb][0] = va;
}

ColouredGraph disjoint_union(const ColouredGraph& a, const ColouredGraph& b) {
    ColouredGraph g = a;
    int off = a.num_vertices();
    for (int v = 0; v < b.num_vertices(); ++v) {
        g.parity.push_back(b.parity[v]);
        std::array<int, kColours> row;
        for (int c = 0; c < kColours; ++c)
            row[c] = b.adj[v][c] < 0 ? b.adj[v][c] : b.adj[v][c] + off;
        g.adj.push_back(row);
    }
    g.rings += b.rings;
    return g;
}

ColouredGraph fundamental_2pt_melon(int colour) {
    ColouredGraph g = build_quartic_vertex(colour);
    glue(g, 0, 1);  // close the first partner link
    return g;
}

ColouredGraph fundamental_vacuum_melon(int colour) {
    ColouredGraph g = build_quartic_vertex(colour);
    glue(g, 0, 1);
    glue(g, 2, 3);
    return g;
}

ColouredGraph necklace_chain(const std::vector<int>& colours) {
    if (colours.empty()) throw std::invalid_argument("necklace_chain: length >= 1");
    ColouredGraph g;
    int p = static_cast<int>(colours.size());
    for (int c : colours) g = disjoint_union(g, build_quartic_vertex(c));
    // Bubble i occupies vertices 4i..4i+3 as (w1, b1, w2, b2). Join the
    // second link of bubble i to the first link of bubble i+1 crosswise.
    for (int i = 0; i < p; ++i) {
        int j = (i + 1) % p;
        glue(g, 4 * i + 3, 4 * j + 0);  // b2(i) -- w1(j)
        glue(g, 4 * j + 1, 4 * i + 2);  // b1(j) -- w2(i)
    }
    return g;
}

ColouredGraph melonic_4pt_chain(int colour, int length) {
    if (length < 1) throw std::invalid_argument("melonic_4pt_chain: length >= 1");
    ColouredGraph g;
    for (int i = 0; i < length; ++i) g = disjoint_union(g, build_quartic_vertex(colour));
    for (int i = 0; i + 1 < length; ++i) {
        glue(g, 4 * i + 3, 4 * (i + 1) + 0);  // b2(i) -- w1(i+1)
        glue(g, 4 * (i + 1) + 1, 4 * i + 2);  // b1(i+1) -- w2(i)
    }
    return g;
}

void insert_2pt_melon(ColouredGraph& g, int black_v, int colour) {
    if (black_v < 0 || black_v >= g.num_vertices() || !g.parity[black_v])
        throw std::invalid_argument("insert_2pt_melon: need a black vertex");
    int white_v = g.adj[black_v][0];
    if (white_v < 0) throw std::invalid_argument("insert_2pt_melon: leg is external");
    g.adj[black_v][0] = -1;
    g.adj[white_v][0] = -1;
    int off = g.num_vertices();
    g = disjoint_union(g, fundamental_2pt_melon(colour));
    // The melon's open legs sit on w2 (off+2) and b2 (off+3).
    glue(g, black_v, off + 2);
    glue(g, off + 3, white_v);
}

// -- structure queries -------------------------------------------------------

void validate(const ColouredGraph& g) {
    int n = g.num_vertices();
    if (static_cast<int>(g.adj.size()) != n)
        throw std::invalid_argument("graph: parity/adjacency size mismatch");
    if (g.rings < 0) throw std::invalid_argument("graph: negative ring count");
    for (int v = 0; v < n; ++v) {
        for (int c = 0; c < kColours; ++c) {
            int u = g.adj[v][c];
            if (u == -1) {
                if (c != 0)
                    throw std::invalid_argument("graph: only colour 0 may be external");
                continue;
            }
            if (u < 0 || u >= n) throw std::invalid_argument("graph: edge out of range");
            if (g.adj[u][c] != v)
                throw std::invalid_argument("graph: adjacency not symmetric");
            if (g.parity[u] == g.parity[v])
                throw std::invalid_argument("graph: edge joins equal parities");
            if (u == v) throw std::invalid_argument("graph: self-loop");
        }
    }
}

int external_count(const ColouredGraph& g) {
    int e = 0;
    for (int v = 0; v < g.num_vertices(); ++v)
        if (g.adj[v][0] == -1) ++e;
    return e;
}

std::vector<int> external_vertices(const ColouredGraph& g) {
    std::vector<int> out;
    for (int v = 0; v < g.num_vertices(); ++v)
        if (g.adj[v][0] == -1) out.push_back(v);
    return out;
}

long internal_zero_edges(const ColouredGraph& g) {
    long e = 0;
    for (int v = 0; v < g.num_vertices(); ++v)
        if (g.adj[v][0] >= 0) ++e;
    return e / 2;
}

namespace {

int components_on(const std::vector<std::array<int, kColours>>& adj, int n,
                  const std::vector<int>& colours, std::vector<int>* label = nullptr) {
    std::vector<int> comp(n, -1);
    int k = 0;
    std::vector<int> stack;
    for (int s = 0; s < n; ++s) {
        if (comp[s] != -1) continue;
        comp[s] = k;
        stack.push_back(s);
        while (!stack.empty()) {
            int v = stack.back();
            stack.pop_back();
            for (int c : colours) {
                int u = adj[v][c];
                if (u >= 0 && comp[u] == -1) {
                    comp[u] = k;
                    stack.push_back(u);
                }
            }
        }
        ++k;
    }
    if (label) *label = std::move(comp);
    return k;
}

const std::vector<int> kAllColours = {0, 1, 2, 3, 4, 5};

}  // namespace

int component_count(const ColouredGraph& g) {
    return components_on(g.adj, g.num_vertices(), kAllColours) + g.rings;
}

bool is_connected(const ColouredGraph& g) { return component_count(g) == 1; }

std::vector<std::vector<int>> colour_components(const ColouredGraph& g,
                                                const std::vector<int>& colours) {
    std::vector<int> label;
    int k = components_on(g.adj, g.num_vertices(), colours, &label);
    std::vector<std::vector<int>> out(k);
    for (int v = 0; v < g.num_vertices(); ++v) out[label[v]].push_back(v);
    return out;
}

FaceCounts face_counts(const ColouredGraph& g) {
    FaceCounts fc;
    int n = g.num_vertices();
    for (int i = 0; i < kColours; ++i) {
        for (int j = i + 1; j < kColours; ++j) {
            std::vector<int> label;
            std::vector<int> pair = {i, j};
            int k = components_on(g.adj, n, pair, &label);
            // A component is cyclic iff every vertex has both colour slots
            // internal (colours >= 1 always are; only colour 0 may dangle).
            std::vector<char> cyclic(k, 1);
            for (int v = 0; v < n; ++v)
                if (g.adj[v][i] < 0 || g.adj[v][j] < 0) cyclic[label[v]] = 0;
            // Skip components that are isolated vertices for this pair
            // (cannot happen: colours 1..5 are always present).
            long faces = std::count(cyclic.begin(), cyclic.end(), 1);
            fc.total += faces;
            if (i == 0) {
                fc.with_zero += faces;
                fc.with_zero_by_colour[j] += faces;
            } else {
                fc.without_zero += faces;
            }
        }
    }
    return fc;
}

std::vector<QuarticBubble> interaction_bubbles(const ColouredGraph& g) {
    std::vector<int> interaction_colours;
    for (int c = 1; c <= kRank; ++c) interaction_colours.push_back(c);
    auto comps = colour_components(g, interaction_colours);
    std::vector<QuarticBubble> out;
    for (auto& comp : comps) {
        if (comp.size() != 4)
            throw std::invalid_argument("graph is not built from quartic vertices");
        std::vector<int> whites, blacks;
        for (int v : comp)
            (g.parity[v] ? blacks : whites).push_back(v);
        if (whites.size() != 2 || blacks.size() != 2)
            throw std::invalid_argument("quartic bubble parity mismatch");
        // From a white vertex, 4 of the 5 interaction edges go to its
        // partner, the remaining one carries the distinguished colour.
        int w1 = whites[0];
        int partner = -1, other = -1, colour = -1;
        for (int c = 1; c <= kRank; ++c) {
            int u = g.adj[w1][c];
            int hits = 0;
            for (int c2 = 1; c2 <= kRank; ++c2) hits += g.adj[w1][c2] == u;
            if (hits == 4) partner = u;
            if (hits == 1) {
                other = u;
                colour = c;
            }
        }
        if (partner < 0 || other < 0)
            throw std::invalid_argument("quartic bubble link structure broken");
        QuarticBubble b;
        b.colour = colour;
        b.white = {w1, whites[1]};
        b.black = {partner, other};
        // Validate the mirrored structure from the second white vertex.
        for (int c = 1; c <= kRank; ++c) {
            int expect = (c == colour) ? partner : other;
            if (g.adj[whites[1]][c] != expect)
                throw std::invalid_argument("quartic bubble link structure broken");
        }
        out.push_back(b);
    }
    std::sort(out.begin(), out.end(),
              [](const QuarticBubble& a, const QuarticBubble& b) {
                  return a.white[0] < b.white[0];
              });
    return out;
}

BoundaryGraph boundary_graph(const ColouredGraph& g) {
    BoundaryGraph b;
    auto ext = external_vertices(g);
    int m = static_cast<int>(ext.size());
    std::vector<int> index_of(g.num_vertices(), -1);
    for (int i = 0; i < m; ++i) index_of[ext[i]] = i;
    b.parity.resize(m);
    b.adj.assign(m, {});
    for (auto& a : b.adj) a.fill(-1);
    b.attachment = ext;
    for (int i = 0; i < m; ++i) b.parity[i] = g.parity[ext[i]];
    // For each colour i, walk the {0,i} path from each external edge to the
    // external edge at its other end.
    for (int c = 1; c <= kRank; ++c) {
        for (int i = 0; i < m; ++i) {
            if (b.adj[i][c] != -1) continue;
            int v = ext[i];
            // Leave through the colour-c edge, then alternate 0, c, ...
            int cur = g.adj[v][c];
            while (g.adj[cur][0] >= 0) {
                cur = g.adj[cur][0];
                cur = g.adj[cur][c];
            }
            int jx = index_of[cur];
            if (jx < 0) throw std::logic_error("boundary path ended off an external edge");
            b.adj[i][c] = jx;
            b.adj[jx][c] = i;
        }
    }
    return b;
}

int boundary_component_count(const ColouredGraph& g) {
    BoundaryGraph b = boundary_graph(g);
    std::vector<int> cols;
    for (int c = 1; c <= kRank; ++c) cols.push_back(c);
    return components_on(b.adj, static_cast<int>(b.parity.size()), cols);
}

// -- jackets -----------------------------------------------------------------

namespace {

std::vector<std::vector<int>> make_cyclic_orders(int first, int last) {
    std::vector<int> rest;
    for (int c = first + 1; c <= last; ++c) rest.push_back(c);
    std::vector<std::vector<int>> out;
    std::sort(rest.begin(), rest.end());
    do {
        std::vector<int> tau = {first};
        tau.insert(tau.end(), rest.begin(), rest.end());
        out.push_back(tau);
    } while (std::next_permutation(rest.begin(), rest.end()));
    return out;
}

// Scratch space shared across the jacket orders of one graph; the epoch
// counter spares a clear of the mark array per order, and the full-degree
// flags let vertices with every tau colour internal use the shared
// parity-wide successor tables instead of per-vertex rotations.
struct TraceWorkspace {
    std::vector<int> next_colour;
    std::vector<int> mark;
    std::vector<char> full;
    int epoch = 0;
};

// Faces of the ribbon graph with rotation tau at white vertices and the
// reversed order at black vertices; absent slots (external or unused
// colours) are skipped. Darts are (v, c) pairs encoded as v*kColours + c.
long trace_map_faces(const std::vector<bool>& parity,
                     const std::vector<std::array<int, kColours>>& adj,
                     const std::vector<int>& tau, TraceWorkspace& ws) {
    int n = static_cast<int>(parity.size());
    int tl = static_cast<int>(tau.size());
    std::size_t darts = static_cast<std::size_t>(n) * kColours;
    if (ws.next_colour.size() < darts) {
        ws.next_colour.assign(darts, -1);
        ws.mark.assign(darts, 0);
        ws.epoch = 0;
        ws.full.assign(n, 0);
        for (int v = 0; v < n; ++v) {
            char f = 1;
            for (int i = 0; i < tl; ++i) f &= adj[v][tau[i]] >= 0;
            ws.full[v] = f;
        }
    }
    ++ws.epoch;
    int succ[kColours], pred[kColours];
    for (int i = 0; i < tl; ++i) {
        succ[tau[i]] = tau[(i + 1) % tl];
        pred[tau[(i + 1) % tl]] = tau[i];
    }
    for (int v = 0; v < n; ++v) {
        if (ws.full[v]) continue;
        int rot[kColours];
        int d = 0;
        if (parity[v]) {
            for (int i = tl; i-- > 0;)
                if (adj[v][tau[i]] >= 0) rot[d++] = tau[i];
        } else {
            for (int i = 0; i < tl; ++i)
                if (adj[v][tau[i]] >= 0) rot[d++] = tau[i];
        }
        for (int i = 0; i < d; ++i)
            ws.next_colour[static_cast<std::size_t>(v) * kColours + rot[i]] =
                rot[(i + 1) % d];
    }
    long faces = 0;
    for (int v = 0; v < n; ++v) {
        for (int i = 0; i < tl; ++i) {
            int c = tau[i];
            if (adj[v][c] < 0) continue;
            std::size_t d0 = static_cast<std::size_t>(v) * kColours + c;
            if (ws.mark[d0] == ws.epoch) continue;
            ++faces;
            int cv = v, cc = c;
            while (true) {
                std::size_t d = static_cast<std::size_t>(cv) * kColours + cc;
                if (ws.mark[d] == ws.epoch) break;
                ws.mark[d] = ws.epoch;
                int u = adj[cv][cc];  // cross the edge
                cc = ws.full[u]
                         ? (parity[u] ? pred[cc] : succ[cc])
                         : ws.next_colour[static_cast<std::size_t>(u) * kColours + cc];
                cv = u;
            }
        }
    }
    return faces;
}

long genus_from_euler(long components, long faces, long edges, long vertices,
                      const char* what) {
    long twice = 2 * components - faces + edges - vertices;
    if (twice < 0 || twice % 2 != 0)
        throw std::logic_error(std::string("non-integral or negative genus for ") + what);
    return twice / 2;
}

}  // namespace

const std::vector<std::vector<int>>& bulk_jacket_orders() {
    static const std::vector<std::vector<int>> orders = make_cyclic_orders(0, kRank);
    return orders;
}

const std::vector<std::vector<int>>& boundary_jacket_orders() {
    static const std::vector<std::vector<int>> orders = make_cyclic_orders(1, kRank);
    return orders;
}

namespace {

// A cyclic order and its reversal trace the same faces (reversed), hence give
// equal genus; keep one representative per pair and weight it twice.
std::vector<std::vector<int>> pair_reduce(const std::vector<std::vector<int>>& orders) {
    std::vector<std::vector<int>> reps;
    for (const auto& tau : orders) {
        std::vector<int> rev;
        rev.push_back(tau[0]);
        for (std::size_t i = tau.size(); i-- > 1;) rev.push_back(tau[i]);
        if (tau <= rev) reps.push_back(tau);
    }
    if (2 * reps.size() != orders.size())
        throw std::logic_error("cyclic-order reversal pairing is not a perfect matching");
    return reps;
}

const std::vector<std::vector<int>>& bulk_jacket_reps() {
    static const std::vector<std::vector<int>> reps = pair_reduce(bulk_jacket_orders());
    return reps;
}

const std::vector<std::vector<int>>& boundary_jacket_reps() {
    static const std::vector<std::vector<int>> reps = pair_reduce(boundary_jacket_orders());
    return reps;
}

}  // namespace

long jacket_genus(const ColouredGraph& g, const std::vector<int>& tau) {
    if (tau.size() != kColours || tau[0] != 0)
        throw std::invalid_argument("bulk jacket order must list colours 0..5 starting at 0");
    std::vector<int> check = tau;
    std::sort(check.begin(), check.end());
    for (int c = 0; c < kColours; ++c)
        if (check[c] != c) throw std::invalid_argument("jacket order is not a colour cycle");
    long n = g.num_vertices();
    long e = 0;
    for (int v = 0; v < n; ++v)
        for (int c = 0; c < kColours; ++c)
            if (g.adj[v][c] >= 0) ++e;
    e /= 2;
    long comps = components_on(g.adj, static_cast<int>(n), kAllColours);
    TraceWorkspace ws;
    long faces = trace_map_faces(g.parity, g.adj, tau, ws);
    return genus_from_euler(comps, faces, e, n, "bulk jacket");
}

long boundary_jacket_genus(const BoundaryGraph& b, const std::vector<int>& tau) {
    if (tau.size() != kRank || tau[0] != 1)
        throw std::invalid_argument("boundary jacket order must list colours 1..5 starting at 1");
    long n = static_cast<long>(b.parity.size());
    long e = (n * kRank) / 2;
    std::vector<int> cols;
    for (int c = 1; c <= kRank; ++c) cols.push_back(c);
    TraceWorkspace ws;
    long comps = components_on(b.adj, static_cast<int>(n), cols);
    long faces = trace_map_faces(b.parity, b.adj, tau, ws);
    return genus_from_euler(comps, faces, e, n, "boundary jacket");
}

Rational jacket_degree(const ColouredGraph& g) {
    long n = g.num_vertices();
    long e = 0;
    for (int v = 0; v < n; ++v)
        for (int c = 0; c < kColours; ++c)
            if (g.adj[v][c] >= 0) ++e;
    e /= 2;
    long comps = components_on(g.adj, static_cast<int>(n), kAllColours);
    TraceWorkspace ws;
    long bulk = 0;
    for (const auto& tau : bulk_jacket_reps()) {
        long faces = trace_map_faces(g.parity, g.adj, tau, ws);
        bulk += 2 * genus_from_euler(comps, faces, e, n, "bulk jacket");
    }
    long bnd = 0;
    if (external_count(g) > 0) {
        BoundaryGraph b = boundary_graph(g);
        long bn = static_cast<long>(b.parity.size());
        long be = (bn * kRank) / 2;
        std::vector<int> cols;
        for (int c = 1; c <= kRank; ++c) cols.push_back(c);
        long bcomps = components_on(b.adj, static_cast<int>(bn), cols);
        TraceWorkspace bws;
        for (const auto& tau : boundary_jacket_reps()) {
            long faces = trace_map_faces(b.parity, b.adj, tau, bws);
            bnd += 2 * genus_from_euler(bcomps, faces, be, bn, "boundary jacket");
        }
    }
    return make_rational(bulk - bnd, 24);
}

bool is_melonic(const ColouredGraph& g) {
    if (g.num_vertices() == 0) return true;  // pure ring graphs, by convention
    return jacket_degree(g) == 0;
}

// -- classification ----------------------------------------------------------

namespace {

void require_model_graph(const ColouredGraph& g) {
    validate(g);
    if (g.num_vertices() == 0) {
        if (g.rings != 1)
            throw std::invalid_argument("classification requires a connected graph");
        return;
    }
    if (g.rings != 0)
        throw std::invalid_argument("classification requires a connected graph");
    if (!is_connected(g))
        throw std::invalid_argument("classification requires a connected graph");
    auto bubbles = interaction_bubbles(g);
    long v_hat = static_cast<long>(bubbles.size());
    long ext = external_count(g);
    long l = internal_zero_edges(g);
    if (2 * l + ext != 4 * v_hat)
        throw std::logic_error("model graph leg count violated");
}

}  // namespace

GraphAnalysis analyze_graph(const ColouredGraph& g) {
    require_model_graph(g);
    GraphAnalysis out;
    if (g.num_vertices() == 0) {  // ring graph: vacuum-melon row by convention
        out.degree = 0;
        out.cls.external_legs = 0;
        out.cls.boundary_components = 0;
        out.cls.degree = 0;
        out.cls.omega = 5;
        out.cls.family = Family::kVacuumMelon;
        out.face_consistent = true;
        return out;
    }
    out.external_legs = external_count(g);
    out.zero_edges = internal_zero_edges(g);
    out.faces = face_counts(g);
    out.boundary_components = out.external_legs > 0 ? boundary_component_count(g) : 0;
    out.degree = jacket_degree(g);
    if (out.degree.get_den() != 1)
        throw std::logic_error("non-integer closed-graph degree encountered");
    long deg = out.degree.get_num().get_si();
    int e = out.external_legs, cb = out.boundary_components;
    int w = static_cast<int>(4 - e - (cb - 1) - deg);
    out.cls.external_legs = e;
    out.cls.boundary_components = cb;
    out.cls.degree = out.degree;
    out.cls.omega = w;
    if (w < 0)
        out.cls.family = Family::kConvergent;
    else if (e == 4 && cb == 1 && deg == 0 && w == 0)
        out.cls.family = Family::kFourPointMelon;
    else if (e == 2 && cb == 1 && deg == 0 && w == 2)
        out.cls.family = Family::kTwoPointMelon;
    else if (e == 0 && cb == 0 && deg == 0 && w == 5)
        out.cls.family = Family::kVacuumMelon;
    else if (e == 0 && cb == 0 && deg == 3 && w == 2)
        out.cls.family = Family::kVacuumNecklaceMonochrome;
    else if (e == 0 && cb == 0 && deg == 5 && w == 0)
        out.cls.family = Family::kVacuumNecklaceMixed;
    else
        throw std::logic_error("divergent graph outside the classification table");
    // D(D-1)/4 * V + D * C - F - C(boundary) - (D-1)/2 * E with D = 5,
    // against the jacket-defined degree.
    Rational face_expr = Rational(5 * g.num_vertices()) + Rational(5) -
                         Rational(out.faces.total) - Rational(cb) - Rational(2 * e);
    out.face_consistent = out.degree == face_expr;
    return out;
}

int divergence_degree(const ColouredGraph& g) { return analyze_graph(g).cls.omega; }

DivergenceClass classify(const ColouredGraph& g) { return analyze_graph(g).cls; }

bool degree_face_consistency(const ColouredGraph& g) {
    validate(g);
    if (g.num_vertices() == 0) return true;
    Rational jackets = jacket_degree(g);
    FaceCounts fc = face_counts(g);
    long v = g.num_vertices();
    long comps = components_on(g.adj, static_cast<int>(v), kAllColours);
    long ext = external_count(g);
    long cb = ext > 0 ? boundary_component_count(g) : 0;
    // D(D-1)/4 * V + D * C - F - C(boundary) - (D-1)/2 * E, with D = 5.
    Rational face_expr = Rational(5 * v) + Rational(5 * comps) - Rational(fc.total) -
                         Rational(cb) - Rational(2 * ext);
    return jackets == face_expr;
}

// -- canonical form ----------------------------------------------------------

namespace {

struct CanonState {
    const ColouredGraph* g;
    int n;
    std::string best;
    bool have_best = false;
    // reusable buffers for the refinement rounds
    std::vector<unsigned long long> key;
    std::vector<int> order;
    std::vector<int> next;
    std::vector<int> count;
};

// Signature per round, packed into 64 bits: own class then the neighbour
// class per colour, 255 marking an external slot. Supports n <= 250.
std::vector<int> refine_classes(CanonState& st, std::vector<int> cls) {
    const ColouredGraph& g = *st.g;
    int n = st.n;
    while (true) {
        for (int v = 0; v < n; ++v) {
            unsigned long long k = static_cast<unsigned>(cls[v]);
            for (int c = 0; c < kColours; ++c) {
                int u = g.adj[v][c];
                k = (k << 8) | static_cast<unsigned>(u < 0 ? 255 : cls[u]);
            }
            st.key[v] = k;
        }
        std::iota(st.order.begin(), st.order.end(), 0);
        std::sort(st.order.begin(), st.order.end(),
                  [&](int a, int b) { return st.key[a] < st.key[b]; });
        int k = 0;
        for (int i = 0; i < n; ++i) {
            if (i > 0 && st.key[st.order[i]] != st.key[st.order[i - 1]]) ++k;
            st.next[st.order[i]] = k;
        }
        if (st.next == cls) return cls;
        cls = st.next;
    }
}

std::string encode_with_labels(const ColouredGraph& g, const std::vector<int>& cls) {
    int n = g.num_vertices();
    std::vector<int> inv(n);
    for (int v = 0; v < n; ++v) inv[cls[v]] = v;
    std::string out;
    out.reserve(static_cast<std::size_t>(n) * (kColours + 1) + 2);
    out.push_back(static_cast<char>(g.rings));
    for (int i = 0; i < n; ++i) {
        int v = inv[i];
        out.push_back(g.parity[v] ? 1 : 0);
        for (int c = 0; c < kColours; ++c) {
            int u = g.adj[v][c];
            out.push_back(u < 0 ? static_cast<char>(0xFF) : static_cast<char>(cls[u]));
        }
    }
    return out;
}

void canonical_search(CanonState& st, std::vector<int> cls) {
    cls = refine_classes(st, std::move(cls));
    int n = st.n;
    // Locate the first non-singleton class.
    std::fill(st.count.begin(), st.count.end(), 0);
    for (int v = 0; v < n; ++v) ++st.count[cls[v]];
    int target = -1;
    for (int k = 0; k < n; ++k) {
        if (st.count[k] > 1) {
            target = k;
            break;
        }
    }
    if (target == -1) {
        std::string enc = encode_with_labels(*st.g, cls);
        if (!st.have_best || enc < st.best) {
            st.best = std::move(enc);
            st.have_best = true;
        }
        return;
    }
    for (int v = 0; v < n; ++v) {
        if (cls[v] != target) continue;
        std::vector<int> split(cls);
        for (int u = 0; u < n; ++u)
            if (split[u] > target || (split[u] == target && u != v)) ++split[u];
        split[v] = target;
        canonical_search(st, std::move(split));
    }
}

}  // namespace

std::string canonical_key(const ColouredGraph& g) {
    int n = g.num_vertices();
    if (n == 0) {
        std::string out;
        out.push_back(static_cast<char>(g.rings));
        return out;
    }
    if (n > 250) throw std::invalid_argument("canonical_key supports at most 250 vertices");
    CanonState st;
    st.g = &g;
    st.n = n;
    st.key.resize(n);
    st.order.resize(n);
    st.next.resize(n);
    st.count.resize(n);
    std::vector<int> cls(n);
    for (int v = 0; v < n; ++v) cls[v] = g.parity[v] ? 1 : 0;
    canonical_search(st, std::move(cls));
    return st.best;
}

bool isomorphic(const ColouredGraph& a, const ColouredGraph& b) {
    if (a.num_vertices() != b.num_vertices() || a.rings != b.rings) return false;
    return canonical_key(a) == canonical_key(b);
}

ColouredGraph relabel_colours(const ColouredGraph& g, const std::array<int, kColours>& perm) {
    for (int c = 1; c <= kRank; ++c)
        if (perm[c] < 1 || perm[c] > kRank)
            throw std::invalid_argument("relabel_colours: permutation must map 1..5 to 1..5");
    ColouredGraph out = g;
    for (int v = 0; v < g.num_vertices(); ++v)
        for (int c = 1; c <= kRank; ++c) out.adj[v][perm[c]] = g.adj[v][c];
    return out;
}

}  // namespace melonrg
