#include "doctest.h"

#include "melonrg/io_json.hpp"

#include <cstdio>
#include <fstream>
#include <stdexcept>
#include <string>

using namespace melonrg;
using nlohmann::json;

TEST_CASE("graph json round trip preserves the isomorphism class") {
    for (const ColouredGraph& g :
         {melonic_4pt_chain(1, 2), fundamental_2pt_melon(3), necklace_chain({1, 2}),
          fundamental_vacuum_melon(5)}) {
        json j = graph_to_json(g);
        CHECK(j.at("D") == 5);
        ColouredGraph back = graph_from_json(j);
        CHECK(isomorphic(back, g));
    }
    ColouredGraph ringed = fundamental_vacuum_melon(1);
    ringed.rings = 3;
    ColouredGraph back = graph_from_json(graph_to_json(ringed));
    CHECK(back.rings == 3);
    CHECK(isomorphic(back, ringed));
}

TEST_CASE("graph json rejects structural garbage with a field path") {
    json j = graph_to_json(melonic_4pt_chain(1, 1));

    json bad = j;
    bad["D"] = 4;
    CHECK_THROWS_AS(graph_from_json(bad), std::invalid_argument);

    bad = j;
    bad["edges"][0][2] = 9;  // colour out of range
    CHECK_THROWS_WITH_AS(graph_from_json(bad), doctest::Contains("edges[0]"),
                         std::invalid_argument);

    bad = j;
    bad["vertices"][1]["parity"] = "green";
    CHECK_THROWS_AS(graph_from_json(bad), std::invalid_argument);

    bad = j;
    bad["edges"].push_back(bad["edges"][0]);  // slot already occupied
    CHECK_THROWS_AS(graph_from_json(bad), std::invalid_argument);

    bad = j;
    bad["external"] = json::array();  // external list inconsistent with slots
    CHECK_THROWS_AS(graph_from_json(bad), std::invalid_argument);
}

TEST_CASE("map json round trip preserves the map isomorphism class") {
    for (const ColouredGraph& g :
         {melonic_4pt_chain(2, 3), necklace_chain({1, 2, 3}), fundamental_vacuum_melon(2)}) {
        ColouredMap m = to_if_map(g);
        json j = map_to_json(m);
        ColouredMap back = map_from_json(j);
        validate_map(back);
        CHECK(maps_isomorphic(back, m));
        CHECK(isomorphic(from_if_map(back), g));
    }
}

TEST_CASE("map json rejects malformed half edge data") {
    ColouredMap m = to_if_map(necklace_chain({1, 2}));
    json j = map_to_json(m);

    json bad = j;
    bad["edges"][0][2] = 0;  // colour must be 1..5
    CHECK_THROWS_AS(map_from_json(bad), std::invalid_argument);

    bad = j;
    bad["edges"][1][0] = bad["edges"][0][0];  // half edge id reused
    CHECK_THROWS_AS(map_from_json(bad), std::invalid_argument);
}

TEST_CASE("solver config parses defaults and rejects unknown keys") {
    SdeConfig c = sde_config_from_json(json::object());
    CHECK(c.M == 2);
    CHECK(c.j_max == 2);
    CHECK(c.m_r_sq == 1.0);
    CHECK(c.tol == 1e-12);

    json j = {{"M", 3}, {"j_max", 1}, {"g_b", 0.02}};
    c = sde_config_from_json(j);
    CHECK(c.M == 3);
    CHECK(c.j_max == 1);
    CHECK(c.g_b == 0.02);

    json bad = {{"M", 2}, {"coupling", 0.1}};
    CHECK_THROWS_AS(sde_config_from_json(bad), std::invalid_argument);

    json roundtrip = sde_config_to_json(c);
    SdeConfig c2 = sde_config_from_json(roundtrip);
    CHECK(c2.M == c.M);
    CHECK(c2.g_b == c.g_b);
    CHECK(c2.eps == c.eps);
}

TEST_CASE("file loader reports the file name on parse errors") {
    const std::string path = "melonrg_io_test_tmp.json";
    save_json_file(path, json{{"k", 1}});
    json j = load_json_file(path);
    CHECK(j.at("k") == 1);
    {
        std::ofstream out(path);
        out << "{ not json";
    }
    CHECK_THROWS_WITH_AS(load_json_file(path), doctest::Contains(path.c_str()), std::invalid_argument);
    std::remove(path.c_str());
}
