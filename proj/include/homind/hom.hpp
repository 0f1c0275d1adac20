#pragma once

// Exact homomorphism counting. The general counter is a backtracking search
// over edge- and label-preserving maps; the construction-tree counter in
// decomp.hpp must agree with it everywhere.

#include <vector>

#include "homind/bignum.hpp"
#include "homind/decomp.hpp"
#include "homind/graph.hpp"

namespace homind {

// label-preserving homomorphism count; every label of F must be assigned in
// G and F's arity must not exceed G's
BigUint hom_count(const LabelledGraph& F, const LabelledGraph& G);
BigUint hom_count(const Graph& F, const Graph& G);

// dynamic programming over a construction tree for F: fully labelled leaves
// admit at most one map, products multiply, eliminations sum over label
// placements; agrees with hom_count everywhere
BigUint hom_count_structured(const LabelledGraph& F, const ConstructionTree& w,
                             const LabelledGraph& G);

// entry v: hom(F, G(l -> v)); labels of F other than l must be assigned in G
std::vector<BigUint> hom_profile(const LabelledGraph& F, const LabelledGraph& G, int label);

struct HomPair {
    LabelledGraph from;
    LabelledGraph to;
};

// batch kernel and its serial reference
std::vector<BigUint> hom_count_batch(const std::vector<HomPair>& pairs);
std::vector<BigUint> hom_count_batch_serial(const std::vector<HomPair>& pairs);

} // namespace homind
