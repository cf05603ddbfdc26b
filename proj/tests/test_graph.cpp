#include "doctest.h"

#include "melonrg/coloured_graph.hpp"

#include <algorithm>
#include <array>
#include <numeric>
#include <vector>

using namespace melonrg;

TEST_CASE("bare quartic vertex: counts, degree, marginal four point class") {
    ColouredGraph g = melonic_4pt_chain(1, 1);
    CHECK(g.num_vertices() == 4);
    CHECK(external_count(g) == 4);
    CHECK(internal_zero_edges(g) == 0);
    FaceCounts f = face_counts(g);
    CHECK(f.total == 16);
    CHECK(f.with_zero == 0);
    CHECK(f.without_zero == 16);
    GraphAnalysis a = analyze_graph(g);
    CHECK(a.degree == Rational(0));
    CHECK(a.boundary_components == 1);
    CHECK(a.cls.omega == 0);
    CHECK(a.cls.family == Family::kFourPointMelon);
    CHECK(a.face_consistent);
    CHECK(is_melonic(g));
}

TEST_CASE("fundamental two point melon is the quadratically divergent class") {
    ColouredGraph g = fundamental_2pt_melon(2);
    CHECK(g.num_vertices() == 4);
    CHECK(external_count(g) == 2);
    FaceCounts f = face_counts(g);
    CHECK(f.total == 20);
    CHECK(f.with_zero == 4);
    GraphAnalysis a = analyze_graph(g);
    CHECK(a.degree == Rational(0));
    CHECK(a.cls.omega == 2);
    CHECK(a.cls.family == Family::kTwoPointMelon);
    // omega = -2 L + F_0 with L the internal propagator count
    CHECK(a.cls.omega == -2 * internal_zero_edges(g) + f.with_zero);
}

TEST_CASE("fundamental vacuum melon carries the leading vacuum divergence") {
    ColouredGraph g = fundamental_vacuum_melon(3);
    CHECK(external_count(g) == 0);
    FaceCounts f = face_counts(g);
    CHECK(f.total == 25);
    CHECK(f.with_zero == 9);
    GraphAnalysis a = analyze_graph(g);
    CHECK(a.degree == Rational(0));
    CHECK(a.boundary_components == 0);
    CHECK(a.cls.omega == 5);
    CHECK(a.cls.family == Family::kVacuumMelon);
    CHECK(a.cls.omega == -2 * internal_zero_edges(g) + f.with_zero);
}

TEST_CASE("necklace chains realize the nonmelonic divergent classes") {
    ColouredGraph mono = necklace_chain({1});
    FaceCounts fm = face_counts(mono);
    CHECK(fm.total == 22);
    GraphAnalysis am = analyze_graph(mono);
    CHECK(am.degree == Rational(3));
    CHECK(am.cls.omega == 2);
    CHECK(am.cls.family == Family::kVacuumNecklaceMonochrome);
    CHECK(am.face_consistent);
    CHECK_FALSE(is_melonic(mono));

    ColouredGraph mixed = necklace_chain({1, 2});
    GraphAnalysis ax = analyze_graph(mixed);
    CHECK(ax.degree == Rational(5));
    CHECK(ax.cls.omega == 0);
    CHECK(ax.cls.family == Family::kVacuumNecklaceMixed);
    CHECK(ax.face_consistent);

    // longer necklaces still satisfy the vacuum omega identity exactly
    ColouredGraph mono3 = necklace_chain({2, 2, 2});
    GraphAnalysis a3 = analyze_graph(mono3);
    CHECK(a3.cls.omega == -2 * internal_zero_edges(mono3) + face_counts(mono3).with_zero);
    CHECK(a3.face_consistent);
    CHECK(a3.cls == classify(mono3));
}

TEST_CASE("melonic four point chains stay marginal at every length") {
    for (int p = 1; p <= 4; ++p) {
        ColouredGraph g = melonic_4pt_chain(4, p);
        GraphAnalysis a = analyze_graph(g);
        CHECK(a.external_legs == 4);
        CHECK(a.degree == Rational(0));
        CHECK(a.boundary_components == 1);
        CHECK(a.cls.omega == 0);
        CHECK(a.cls.family == Family::kFourPointMelon);
        CHECK(is_melonic(g));
    }
}

TEST_CASE("melon insertion preserves melonicity and the divergence class") {
    ColouredGraph g = fundamental_2pt_melon(1);
    // find a black vertex with an internal colour-0 edge
    int black_v = -1;
    for (int v = 0; v < g.num_vertices(); ++v)
        if (g.parity[v] && g.adj[v][0] >= 0) { black_v = v; break; }
    REQUIRE(black_v >= 0);
    insert_2pt_melon(g, black_v, 5);
    validate(g);
    CHECK(g.num_vertices() == 8);
    GraphAnalysis a = analyze_graph(g);
    CHECK(a.degree == Rational(0));
    CHECK(a.cls.omega == 2);
    CHECK(a.cls.family == Family::kTwoPointMelon);
    CHECK(is_melonic(g));
}

TEST_CASE("classification is equivariant under interaction colour permutations") {
    std::vector<ColouredGraph> probes;
    probes.push_back(melonic_4pt_chain(1, 2));
    probes.push_back(fundamental_2pt_melon(3));
    probes.push_back(necklace_chain({1, 2, 3}));
    probes.push_back(necklace_chain({5}));
    std::array<int, kColours> perm = {0, 3, 5, 1, 2, 4};
    for (const ColouredGraph& g : probes) {
        ColouredGraph h = relabel_colours(g, perm);
        validate(h);
        CHECK(classify(g) == classify(h));
        CHECK(face_counts(g).total == face_counts(h).total);
        CHECK(jacket_degree(g) == jacket_degree(h));
    }
}

TEST_CASE("canonical keys identify relabeled copies and separate distinct graphs") {
    ColouredGraph g = necklace_chain({1, 2});
    // relabel vertices by an arbitrary permutation
    int n = g.num_vertices();
    std::vector<int> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    std::rotate(perm.begin(), perm.begin() + 3, perm.end());
    std::swap(perm[0], perm[5]);
    ColouredGraph h;
    h.parity.assign(n, false);
    h.adj.assign(n, {});
    for (int v = 0; v < n; ++v) {
        h.parity[perm[v]] = g.parity[v];
        for (int c = 0; c < kColours; ++c)
            h.adj[perm[v]][c] = g.adj[v][c] < 0 ? g.adj[v][c] : perm[g.adj[v][c]];
    }
    validate(h);
    CHECK(canonical_key(g) == canonical_key(h));
    CHECK(isomorphic(g, h));
    CHECK(canonical_key(g) != canonical_key(necklace_chain({1, 3})));
    CHECK(canonical_key(necklace_chain({1})) != canonical_key(fundamental_vacuum_melon(1)));
}

TEST_CASE("jacket census sizes and pairing") {
    CHECK(bulk_jacket_orders().size() == 120);
    CHECK(boundary_jacket_orders().size() == 24);
}

TEST_CASE("degree face consistency on all table representatives") {
    for (const ColouredGraph& g :
         {melonic_4pt_chain(1, 1), fundamental_2pt_melon(1), fundamental_vacuum_melon(1),
          necklace_chain({1}), necklace_chain({1, 2}), necklace_chain({1, 2, 3, 4})}) {
        CHECK(degree_face_consistency(g));
    }
}
