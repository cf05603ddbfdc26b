#pragma once

#include <vector>

#include "melonrg/coloured_graph.hpp"

namespace melonrg {

// Every isomorphism class of connected graph assembled from at most
// max_bubbles quartic bubbles under an arbitrary set of propagator gluings,
// open and closed alike. Colours are fixed data: classes are not quotiented
// by colour relabelling.
std::vector<ColouredGraph> exhaustive_census(int max_bubbles);

// Connected vacuum classes only.
std::vector<ColouredGraph> exhaustive_closed_census(int max_bubbles);

// Number of decorated chains of the stated total order: a monochrome chain
// of some length p plus an ordered sequence of two-point insertion objects
// on each of the p-1 connectors. Counts constructions, not isomorphism
// classes. Each construction is realized as a graph and pushed through the
// classifier; throws std::logic_error if any of them fails to come back as
// a divergent four-point melon.
long divergent_4pt_census(int order);

}  // namespace melonrg
