#pragma once

#include <string>
#include <vector>

#include "melonrg/coloured_graph.hpp"

namespace melonrg {

// Edge-coloured combinatorial map dual to the quartic-bubble graphs: one map
// edge per interaction bubble (carrying its distinguished colour), one half
// edge per partner link, one map vertex per maximal alternating sequence of
// propagator edges and links. A non-cyclic sequence leaves a gap carrying a
// cilium; the cilium is always stored at the corner before rotation[0].
// Vertices with an empty rotation are bare and stand for closed propagator
// rings with no interaction bubble on them.
struct ColouredMap {
    std::vector<int> edge_colour;             // per edge, in 1..kRank
    std::vector<std::vector<int>> rotation;   // per vertex: darts 2*edge+end, cyclic order
    std::vector<bool> ciliated;               // per vertex

    int num_edges() const { return static_cast<int>(edge_colour.size()); }
    int num_vertices() const { return static_cast<int>(rotation.size()); }
};

// Throws std::invalid_argument on malformed data: colour range, dart ranges,
// darts not forming an exact double cover of the edges. A ciliated vertex
// with no half edge is structurally fine but has no graph realization.
void validate_map(const ColouredMap& m);

int cilia_count(const ColouredMap& m);

// Vertex sets of the connected components (bare vertices are singletons).
std::vector<std::vector<int>> map_components(const ColouredMap& m);

// Every component has cyclomatic number zero. Bare vertices count as trees.
bool is_melonic_map(const ColouredMap& m);

// Repeatedly deletes non-ciliated vertices of degree one together with their
// edge. A closed tree component collapses to a single bare vertex; a tree
// with two cilia collapses to the path joining the ciliated vertices.
ColouredMap reduce_chains(const ColouredMap& m);

// Forward map of the bijection: quartic-bubble graph to coloured map.
ColouredMap to_if_map(const ColouredGraph& g);

// Inverse map: rebuilds the graph from the map. Round trips are exact up to
// isomorphism on either side.
ColouredGraph from_if_map(const ColouredMap& m);

// Divergence data read off the map alone where the divergence table applies
// (trees and monochrome cycles); other inputs are classified through the
// rebuilt graph. Requires a connected map.
DivergenceClass classify_if(const ColouredMap& m);

// Label-independent encoding: minimum rooted-dart traversal code per
// component, components sorted, bare vertices counted separately.
std::string map_canonical_key(const ColouredMap& m);

bool maps_isomorphic(const ColouredMap& a, const ColouredMap& b);

}  // namespace melonrg
