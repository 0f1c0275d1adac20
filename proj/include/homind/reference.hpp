#pragma once

// Reference implementations used as independent oracles by the test and
// acceptance suites. Deliberately naive: plain enumeration, no pruning, no
// shared code with the optimised paths they check.

#include <vector>

#include "homind/bignum.hpp"
#include "homind/graph.hpp"

namespace homind {

// counts structure-preserving maps by enumerating all |V(G)|^|V(F)| of them
BigUint hom_count_reference(const LabelledGraph& f, const LabelledGraph& g);

// breadth-first component computation
std::vector<std::vector<int>> components_reference(const Graph& g);

// isomorphism by trying every permutation
bool isomorphic_reference(const Graph& a, const Graph& b);

} // namespace homind
