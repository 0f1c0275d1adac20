#pragma once

// Exact canonical forms by colour refinement plus individualisation
// branching, an isomorphism backtracker that does not go through canonical
// forms, and isomorphism-free enumeration of small graphs.

#include <string>
#include <vector>

#include "homind/graph.hpp"

namespace homind {

// two graphs get equal strings iff isomorphic; exact, desk scale only
std::string canonical_form(const Graph& g);

// labels are fixed names: an isomorphism must map the vertex carrying
// label l to the vertex carrying label l
std::string canonical_form(const LabelledGraph& g);

// independent route: simultaneous refinement + backtracking, no canonical
// strings involved
bool isomorphic(const Graph& a, const Graph& b);

// all graphs on exactly n vertices up to isomorphism, deterministic order
std::vector<Graph> all_graphs(int n);
// all graphs with between 1 and n vertices up to isomorphism
std::vector<Graph> all_graphs_up_to(int n);
std::vector<Graph> connected_graphs(int n);
std::vector<Graph> connected_graphs_up_to(int n);

} // namespace homind
