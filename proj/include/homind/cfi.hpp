#pragma once

// The even/odd gadget construction over a base graph, the path-twist
// isomorphism between one-vertex twists, exact isomorphism checking at desk
// scale, and the witness-pair builder for the depth-bounded closure result.

#include <optional>
#include <variant>
#include <vector>

#include "homind/decomp.hpp"
#include "homind/graph.hpp"

namespace homind {

struct CfiGraph {
    Graph base;
    std::vector<int> twist_set; // sorted base vertices of odd parity
    Graph graph;
    std::vector<int> fiber_base;         // cfi vertex -> base vertex (the projection)
    std::vector<std::vector<int>> subset; // cfi vertex -> sorted incident base-edge ids in S
    std::vector<std::vector<int>> fiber;  // base vertex -> its cfi vertices

    // index of (v, S); S given as sorted incident-edge ids
    int vertex_of(int base_vertex, const std::vector<int>& s) const;
};

CfiGraph cfi_build(const Graph& g, const std::vector<int>& twist_set);
// even and odd companions; the odd side twists at vertex 0
std::pair<CfiGraph, CfiGraph> cfi_pair(const Graph& g);

// isomorphism G_{u} -> G_{v} that fixes fibers off the path, realised by
// toggling the incident path edges along it
std::vector<int> twist_iso(const Graph& g, int u, int v, const std::vector<int>& path);

bool iso_check(const Graph& a, const Graph& b);

struct WitnessPair {
    Graph g, h;
    Graph core; // the component of f the pair is built from
    int clique_n = 0;
};

struct WitnessRefusal {
    DecompositionWitness witness; // depth-q certificate for f
};

// graphs G, H that agree on every hom count from the depth-q class but
// differ on hom(f, .); refuses when f itself has a depth-q cover
std::variant<WitnessPair, WitnessRefusal> witness_pair(const Graph& f, int q);

} // namespace homind
