#pragma once

#include <array>
#include <string>
#include <vector>

#include "melonrg/rational.hpp"

namespace melonrg {

inline constexpr int kRank = 5;     // D: tensor rank, strand colours 1..5
inline constexpr int kColours = 6;  // edge colours 0..5; colour 0 = propagator

// Bipartite (D+1)-regular properly edge-coloured graph. Every vertex has one
// incident edge per colour; colours 1..5 are always internal, the colour-0
// slot is either internal or an external (half-)edge.
struct ColouredGraph {
    // parity[v]: false = white (field), true = black (conjugate field).
    std::vector<bool> parity;
    // adj[v][c]: neighbour along the colour-c edge; adj[v][0] == -1 marks an
    // external colour-0 edge.
    std::vector<std::array<int, kColours>> adj;
    // Vertex-free colour-0 loops (images of bare intermediate-field
    // vertices); they never arise from quartic-vertex gluing.
    int rings = 0;

    int num_vertices() const { return static_cast<int>(parity.size()); }
};

enum class Family {
    kFourPointMelon,
    kTwoPointMelon,
    kVacuumMelon,
    kVacuumNecklaceMonochrome,
    kVacuumNecklaceMixed,
    kConvergent,
};

std::string family_name(Family f);

struct DivergenceClass {
    int external_legs = 0;
    int boundary_components = 0;
    Rational degree;  // degree from the jacket genera (exact)
    int omega = 0;    // superficial divergence degree
    Family family = Family::kConvergent;

    bool operator==(const DivergenceClass& o) const {
        return external_legs == o.external_legs &&
               boundary_components == o.boundary_components && degree == o.degree &&
               omega == o.omega && family == o.family;
    }
};

struct FaceCounts {
    long total = 0;           // cyclic 2-bubbles, all colour pairs
    long with_zero = 0;       // cyclic {0,i} 2-bubbles (faces of the tensor graph)
    long without_zero = 0;    // cyclic {i,j} 2-bubbles, 0 < i < j
    std::array<long, kColours> with_zero_by_colour{};  // index by i = 1..5
};

struct QuarticBubble {
    int colour = 0;               // distinguished colour
    std::array<int, 2> white{};   // white end of each partner link
    std::array<int, 2> black{};   // black partner joined by the 4 colours != colour
};

// 5-coloured closed graph on the external edges; edge of colour i per
// non-cyclic {0,i} 2-bubble.
struct BoundaryGraph {
    std::vector<bool> parity;
    std::vector<std::array<int, kColours>> adj;  // slots 1..5; slot 0 unused (-1)
    std::vector<int> attachment;                 // G-vertex carrying the external edge
};

// -- construction ------------------------------------------------------------

// The coloured extension of the quartic interaction of the given distinguished
// colour: 4 vertices, two partner links of 4 parallel edges each, two edges of
// the distinguished colour, and 4 external colour-0 legs.
ColouredGraph build_quartic_vertex(int colour);

// Glues the external colour-0 legs at vertices va, vb (opposite parity) into
// an internal colour-0 edge.
void glue(ColouredGraph& g, int va, int vb);

ColouredGraph disjoint_union(const ColouredGraph& a, const ColouredGraph& b);

// One quartic vertex with both legs of each partner link contracted
// (tadpole on one link): external legs remain on the second link.
ColouredGraph fundamental_2pt_melon(int colour);
// One quartic vertex with both partner links closed by colour-0 edges.
ColouredGraph fundamental_vacuum_melon(int colour);
// Cyclic chain of quartic vertices c[0], ..., c[p-1] joined crosswise (the
// intermediate-field cycle); monochrome when all colours agree.
ColouredGraph necklace_chain(const std::vector<int>& colours);
// Open chain of p quartic vertices of one colour joined by parallel colour-0
// edge pairs; p = 1 is the bare quartic vertex.
ColouredGraph melonic_4pt_chain(int colour, int length);
// Replaces the internal colour-0 edge leaving black vertex `black_v` by
// (black_v -> melon -> old neighbour) with a fundamental 2-point melon of the
// given colour.
void insert_2pt_melon(ColouredGraph& g, int black_v, int colour);

// -- structure queries -------------------------------------------------------

void validate(const ColouredGraph& g);
int external_count(const ColouredGraph& g);
std::vector<int> external_vertices(const ColouredGraph& g);
long internal_zero_edges(const ColouredGraph& g);
int component_count(const ColouredGraph& g);  // rings count as components
bool is_connected(const ColouredGraph& g);

// Connected components of the spanning subgraph with the given colours.
std::vector<std::vector<int>> colour_components(const ColouredGraph& g,
                                                const std::vector<int>& colours);

FaceCounts face_counts(const ColouredGraph& g);

// Decomposition into quartic interaction bubbles; throws when some
// colours-1..5 component is not a quartic vertex.
std::vector<QuarticBubble> interaction_bubbles(const ColouredGraph& g);

BoundaryGraph boundary_graph(const ColouredGraph& g);
int boundary_component_count(const ColouredGraph& g);

// -- jackets and degree ------------------------------------------------------

// All cyclic orders of {0..5} (first entry fixed to 0): the 120 bulk jackets.
const std::vector<std::vector<int>>& bulk_jacket_orders();
// All cyclic orders of {1..5}: the 24 boundary jackets.
const std::vector<std::vector<int>>& boundary_jacket_orders();

// Total genus (summed over components) of the jacket map obtained by rotating
// internal edges at white vertices by `tau` and at black vertices by the
// reversed order, with external half-edges deleted. Euler relation
// 2 * genus = 2C - F_map + e - V; integrality is asserted.
long jacket_genus(const ColouredGraph& g, const std::vector<int>& tau);
long boundary_jacket_genus(const BoundaryGraph& b, const std::vector<int>& tau);

// Jacket degree: (sum over bulk jacket genera minus sum over
// boundary jacket genera) / 4!.
Rational jacket_degree(const ColouredGraph& g);

bool is_melonic(const ColouredGraph& g);

// omega = D - 1 - E - (C(boundary) - 1) - degree, with the closed-graph
// convention C(boundary) = 0. Requires a connected model graph.
int divergence_degree(const ColouredGraph& g);

DivergenceClass classify(const ColouredGraph& g);

// Checks the jacket-defined degree against the face-count expression
// D(D-1)/4 V + D C - F - C(boundary) - (D-1)/2 E in exact rational
// arithmetic.
bool degree_face_consistency(const ColouredGraph& g);

// Everything the classifier and the analyze record need, with the jacket
// sums evaluated once. Requires a connected model graph.
struct GraphAnalysis {
    int external_legs = 0;
    long zero_edges = 0;
    FaceCounts faces;
    int boundary_components = 0;
    Rational degree;
    DivergenceClass cls;
    bool face_consistent = false;
};

GraphAnalysis analyze_graph(const ColouredGraph& g);

// -- isomorphism -------------------------------------------------------------

// Canonical byte string: equal keys iff the graphs are isomorphic through a
// parity- and colour-preserving map (external slots preserved).
std::string canonical_key(const ColouredGraph& g);
bool isomorphic(const ColouredGraph& a, const ColouredGraph& b);

// Applies a permutation of the interaction colours 1..5 (perm[0] unused).
ColouredGraph relabel_colours(const ColouredGraph& g, const std::array<int, kColours>& perm);

}  // namespace melonrg
