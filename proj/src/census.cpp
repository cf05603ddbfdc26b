#include "melonrg/census.hpp"

#include <stdexcept>
#include <string>
#include <unordered_set>

namespace melonrg {

namespace {

void colour_multisets(int size, int min_colour, std::vector<int>& cur,
                      std::vector<std::vector<int>>& out) {
    if (size == 0) {
        out.push_back(cur);
        return;
    }
    for (int c = min_colour; c <= kRank; ++c) {
        cur.push_back(c);
        colour_multisets(size - 1, c, cur, out);
        cur.pop_back();
    }
}

// Breadth-first closure of one bubble multiset under single gluings, with
// canonical-form deduplication. Intermediate states may be disconnected;
// only connected ones are reported.
void census_for_multiset(const std::vector<int>& colours, std::vector<ColouredGraph>& out) {
    ColouredGraph start;
    for (int c : colours) start = disjoint_union(start, build_quartic_vertex(c));
    std::unordered_set<std::string> seen;
    std::vector<ColouredGraph> frontier;
    seen.insert(canonical_key(start));
    if (is_connected(start)) out.push_back(start);
    frontier.push_back(std::move(start));
    while (!frontier.empty()) {
        std::vector<ColouredGraph> next;
        for (const auto& g : frontier) {
            std::vector<int> whites, blacks;
            for (int v = 0; v < g.num_vertices(); ++v) {
                if (g.adj[v][0] != -1) continue;
                (g.parity[v] ? blacks : whites).push_back(v);
            }
            ColouredGraph scratch = g;
            for (int w : whites) {
                for (int b : blacks) {
                    scratch.adj[w][0] = b;
                    scratch.adj[b][0] = w;
                    std::string key = canonical_key(scratch);
                    if (seen.insert(std::move(key)).second) {
                        if (is_connected(scratch)) out.push_back(scratch);
                        next.push_back(scratch);
                    }
                    scratch.adj[w][0] = -1;
                    scratch.adj[b][0] = -1;
                }
            }
        }
        frontier = std::move(next);
    }
}

}  // namespace

std::vector<ColouredGraph> exhaustive_census(int max_bubbles) {
    if (max_bubbles < 1) throw std::invalid_argument("census needs at least one bubble");
    std::vector<ColouredGraph> out;
    for (int k = 1; k <= max_bubbles; ++k) {
        std::vector<std::vector<int>> multisets;
        std::vector<int> cur;
        colour_multisets(k, 1, cur, multisets);
        for (const auto& ms : multisets) census_for_multiset(ms, out);
    }
    return out;
}

std::vector<ColouredGraph> exhaustive_closed_census(int max_bubbles) {
    std::vector<ColouredGraph> all = exhaustive_census(max_bubbles);
    std::vector<ColouredGraph> out;
    for (auto& g : all)
        if (external_count(g) == 0) out.push_back(std::move(g));
    return out;
}

// -- decorated chains --------------------------------------------------------

namespace {

// Two-point insertion grammar: an object of order n is either a single
// bubble (n = 1) or a coloured ordered pair of objects of orders summing to
// n. Encoded in preorder: 0 for the single bubble, colour then the two
// children for a pair.
void enumerate_sobjects(int order, std::vector<std::vector<int>>& out) {
    if (order == 1) {
        out.push_back({0});
        return;
    }
    for (int c = 1; c <= kRank; ++c) {
        for (int left = 1; left < order; ++left) {
            std::vector<std::vector<int>> lhs, rhs;
            enumerate_sobjects(left, lhs);
            enumerate_sobjects(order - left, rhs);
            for (const auto& a : lhs) {
                for (const auto& b : rhs) {
                    std::vector<int> code;
                    code.push_back(c);
                    code.insert(code.end(), a.begin(), a.end());
                    code.insert(code.end(), b.begin(), b.end());
                    out.push_back(std::move(code));
                }
            }
        }
    }
}

// Realize an insertion object on the propagator leaving black_v; the
// inherited colour colours its leftmost bubble. Pairs stack both halves at
// the same black end: the census counts the decorated data, the graph just
// has to classify as a divergent four-point melon.
std::size_t realize_sobject(ColouredGraph& g, int black_v, int colour,
                            const std::vector<int>& code, std::size_t pos) {
    if (code[pos] == 0) {
        insert_2pt_melon(g, black_v, colour);
        return pos + 1;
    }
    int pair_colour = code[pos];
    std::size_t after_left = realize_sobject(g, black_v, colour, code, pos + 1);
    return realize_sobject(g, black_v, pair_colour, code, after_left);
}

// One connector item: either a bare bubble of any colour or a colour paired
// with an insertion object.
struct Item {
    int colour;
    std::vector<int> code;  // empty for the bare-bubble item
};

void enumerate_items(int order, std::vector<Item>& out) {
    if (order == 1)
        for (int c = 1; c <= kRank; ++c) out.push_back({c, {}});
    std::vector<std::vector<int>> objs;
    enumerate_sobjects(order, objs);
    for (int c = 1; c <= kRank; ++c)
        for (const auto& o : objs) out.push_back({c, o});
}

void enumerate_item_sequences(int total, std::vector<const Item*>& cur,
                              const std::vector<std::vector<Item>>& items_by_order,
                              std::vector<std::vector<const Item*>>& out) {
    if (total == 0) {
        out.push_back(cur);
        return;
    }
    for (int first = 1; first <= total; ++first) {
        for (const Item& it : items_by_order[first]) {
            cur.push_back(&it);
            enumerate_item_sequences(total - first, cur, items_by_order, out);
            cur.pop_back();
        }
    }
}

void compositions(int total, int parts, std::vector<int>& cur,
                  std::vector<std::vector<int>>& out) {
    if (parts == 1) {
        cur.push_back(total);
        out.push_back(cur);
        cur.pop_back();
        return;
    }
    for (int first = 0; first <= total; ++first) {
        cur.push_back(first);
        compositions(total - first, parts - 1, cur, out);
        cur.pop_back();
    }
}

}  // namespace

long divergent_4pt_census(int order) {
    if (order < 1 || order > 6)
        throw std::invalid_argument("decorated-chain census supported for orders 1..6");
    std::vector<std::vector<Item>> items_by_order(order + 1);
    for (int n = 1; n <= order; ++n) enumerate_items(n, items_by_order[n]);
    std::vector<std::vector<std::vector<const Item*>>> seqs_by_total(order + 1);
    for (int t = 0; t <= order; ++t) {
        std::vector<const Item*> cur;
        enumerate_item_sequences(t, cur, items_by_order, seqs_by_total[t]);
    }
    DivergenceClass expected;
    expected.external_legs = 4;
    expected.boundary_components = 1;
    expected.degree = 0;
    expected.omega = 0;
    expected.family = Family::kFourPointMelon;
    long count = 0;
    for (int p = 1; p <= order; ++p) {
        int budget = order - p;
        if (p == 1) {
            if (budget != 0) continue;
            if (!(classify(melonic_4pt_chain(1, 1)) == expected))
                throw std::logic_error("decorated chain failed four-point classification");
            ++count;
            continue;
        }
        std::vector<std::vector<int>> comps;
        std::vector<int> cur;
        compositions(budget, p - 1, cur, comps);
        for (const auto& comp : comps) {
            std::vector<std::size_t> counts(p - 1), sel(p - 1, 0);
            for (int k = 0; k < p - 1; ++k) counts[k] = seqs_by_total[comp[k]].size();
            while (true) {
                ColouredGraph g = melonic_4pt_chain(1, p);
                for (int k = 0; k < p - 1; ++k) {
                    // Connector k decorates the propagator leaving the
                    // second black vertex of chain bubble k.
                    int black_end = 4 * k + 3;
                    for (const Item* it : seqs_by_total[comp[k]][sel[k]]) {
                        if (it->code.empty())
                            insert_2pt_melon(g, black_end, it->colour);
                        else
                            realize_sobject(g, black_end, it->colour, it->code, 0);
                    }
                }
                if (!(classify(g) == expected))
                    throw std::logic_error("decorated chain failed four-point classification");
                ++count;
                int k = 0;
                while (k < p - 1) {
                    if (++sel[k] < counts[k]) break;
                    sel[k] = 0;
                    ++k;
                }
                if (k == p - 1) break;
            }
        }
    }
    return count;
}

}  // namespace melonrg
