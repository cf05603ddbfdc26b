#include "doctest.h"

#include "melonrg/census.hpp"
#include "melonrg/coloured_graph.hpp"
#include "melonrg/if_map.hpp"

#include <stdexcept>

using namespace melonrg;

TEST_CASE("bare quartic vertex maps to a single edge with two ciliated ends") {
    ColouredGraph g = melonic_4pt_chain(2, 1);
    ColouredMap m = to_if_map(g);
    validate_map(m);
    CHECK(m.num_edges() == 1);
    CHECK(m.edge_colour[0] == 2);
    CHECK(m.num_vertices() == 2);
    CHECK(cilia_count(m) == 2);
    CHECK(is_melonic_map(m));
    CHECK(classify_if(m) == classify(g));
    CHECK(isomorphic(from_if_map(m), g));
}

TEST_CASE("vacuum melon maps to a one edge tree with no cilium") {
    ColouredGraph g = fundamental_vacuum_melon(4);
    ColouredMap m = to_if_map(g);
    CHECK(m.num_edges() == 1);
    CHECK(cilia_count(m) == 0);
    CHECK(is_melonic_map(m));
    CHECK(isomorphic(from_if_map(m), g));
}

TEST_CASE("necklaces map to cycles and are not melonic") {
    for (int p = 1; p <= 3; ++p) {
        std::vector<int> cols;
        for (int i = 0; i < p; ++i) cols.push_back(1 + (i % 2));
        ColouredGraph g = necklace_chain(cols);
        ColouredMap m = to_if_map(g);
        validate_map(m);
        CHECK(m.num_edges() == p);
        CHECK(cilia_count(m) == 0);
        CHECK_FALSE(is_melonic_map(m));
        CHECK(classify_if(m) == classify(g));
        CHECK(isomorphic(from_if_map(m), g));
    }
}

TEST_CASE("bijection round trips across the full two bubble census") {
    std::vector<ColouredGraph> census = exhaustive_census(2);
    CHECK(census.size() == 565);
    for (const ColouredGraph& g : census) {
        ColouredMap m = to_if_map(g);
        validate_map(m);
        ColouredGraph back = from_if_map(m);
        CHECK(isomorphic(back, g));
        CHECK(classify_if(m) == classify(g));
        CHECK(is_melonic_map(m) == is_melonic(g));
        // map keys separate classes exactly as graph keys do
        CHECK(maps_isomorphic(m, to_if_map(back)));
    }
}

TEST_CASE("one bubble census has the expected size and survives the map") {
    std::vector<ColouredGraph> census = exhaustive_census(1);
    CHECK(census.size() == 25);
    for (const ColouredGraph& g : census)
        CHECK(isomorphic(from_if_map(to_if_map(g)), g));
}

TEST_CASE("chain reduction collapses trees and keeps ciliated cores") {
    // closed melonic tree collapses to one bare vertex (a propagator ring)
    ColouredGraph vac = fundamental_vacuum_melon(1);
    ColouredMap m = reduce_chains(to_if_map(vac));
    CHECK(m.num_edges() == 0);
    CHECK(m.num_vertices() == 1);
    CHECK(cilia_count(m) == 0);

    // four point chain with cilia at both ends reduces to the bare path
    ColouredGraph chain = melonic_4pt_chain(3, 4);
    ColouredMap mc = reduce_chains(to_if_map(chain));
    validate_map(mc);
    CHECK(cilia_count(mc) == 2);
    CHECK(mc.num_edges() <= to_if_map(chain).num_edges());

    // a cycle is already reduced
    ColouredMap cyc = to_if_map(necklace_chain({1, 2}));
    ColouredMap rc = reduce_chains(cyc);
    CHECK(rc.num_edges() == cyc.num_edges());
}

TEST_CASE("bare rings survive the round trip") {
    ColouredGraph g = fundamental_vacuum_melon(1);
    g.rings = 2;
    ColouredMap m = to_if_map(g);
    int bare = 0;
    for (int v = 0; v < m.num_vertices(); ++v)
        if (m.rotation[v].empty() && !m.ciliated[v]) ++bare;
    CHECK(bare == 2);
    ColouredGraph back = from_if_map(m);
    CHECK(back.rings == 2);
    CHECK(isomorphic(back, g));
}

TEST_CASE("malformed maps are rejected") {
    ColouredMap m;
    m.edge_colour = {7};  // out of range
    m.rotation = {{0, 1}};
    m.ciliated = {false};
    CHECK_THROWS_AS(validate_map(m), std::invalid_argument);

    ColouredMap dup;
    dup.edge_colour = {1};
    dup.rotation = {{0, 0}};  // same dart twice
    dup.ciliated = {false};
    CHECK_THROWS_AS(validate_map(dup), std::invalid_argument);
}

TEST_CASE("divergent four point counts by order") {
    CHECK(divergent_4pt_census(1) == 1);
    CHECK(divergent_4pt_census(2) == 1);
    CHECK(divergent_4pt_census(3) == 11);
    CHECK(divergent_4pt_census(4) == 146);
}
