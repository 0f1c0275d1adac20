#pragma once

// The three membership witnesses for the width-and-depth-bounded graph
// classes: rooted tree decompositions with the cumulative-union depth
// measure, pebble forest covers, and construction trees (with the guarded
// restriction on label removal). Verification, measures, nice-form
// normalisation, constructive conversions, exact membership search and
// isomorphism-free class enumeration.

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "homind/graph.hpp"

namespace homind {

constexpr int kInfDepth = 1 << 28;

struct TreeDecomposition {
    int root = 0;
    std::vector<int> parent;            // -1 at the root
    std::vector<std::vector<int>> bags; // sorted vertex ids of G
    int node_count() const { return static_cast<int>(parent.size()); }
    std::vector<int> children(int t) const;
};

struct PebbleForestCover {
    RootedForest forest;     // over V(G)
    std::vector<int> pebble; // values in 1..k
};

struct ConstructionTree {
    enum class Kind { Leaf, Eliminate, Product };
    struct Node {
        Kind kind = Kind::Leaf;
        int elim_label = 0;                     // Eliminate only
        std::vector<int> vertices;              // G vertex ids, sorted
        std::vector<std::pair<int, int>> edges; // u < v, sorted
        std::vector<int> label_to_vertex;       // size arity, -1 unassigned
        std::vector<int> children;
    };
    int arity = 0;
    int root = 0;
    std::vector<Node> nodes;

    // node graph as a standalone labelled graph (vertices reindexed)
    LabelledGraph node_graph(int t) const;
    int elimination_depth() const;
};

using DecompositionWitness = std::variant<TreeDecomposition, PebbleForestCover, ConstructionTree>;

struct Measures {
    std::optional<int> width;
    int depth = 0;
    std::optional<int> elimination_depth;
};

// td: width and min-over-roots depth; pfc: forest height; ctree: elimination depth
Measures measure(const DecompositionWitness& w);
// depth of a tree decomposition for one fixed root
int td_depth_at_root(const TreeDecomposition& td, int root);
// the minimising root (ties to the smallest node index)
std::pair<int, int> td_best_root(const TreeDecomposition& td);

struct Verdict {
    bool ok = true;
    std::string violation;
};

Verdict verify(const Graph& g, const DecompositionWitness& w, int k, int q, bool guarded = false);
// construction trees also certify labelled graphs (class membership of
// quantum-graph terms); root labels must equal f's labels
Verdict verify_labelled(const LabelledGraph& f, const ConstructionTree& w, int k, int q,
                        bool guarded = false);

bool is_nice(const TreeDecomposition& td);
// every internal node becomes introduce/forget/join, root and leaf bags
// empty; width and depth are preserved
TreeDecomposition make_nice(const TreeDecomposition& td);

enum class WitnessKind { Td, Pfc, Ctree };
DecompositionWitness convert(const Graph& g, const DecompositionWitness& w, WitnessKind target);

// minimal height of a k-pebble forest cover, kInfDepth if none exists
int min_pfc_depth(const Graph& g, int k, PebbleForestCover* witness = nullptr);
// minimal elimination depth of a k-construction tree for a labelled graph
int min_ctree_elim_depth(const LabelledGraph& f, int k, bool guarded = false);
// explicit optimal construction tree for a labelled graph; throws when none exists
ConstructionTree build_ctree_witness(const LabelledGraph& f, int k, bool guarded = false);
// direct search over rooted tree decompositions of width <= k-1, depth <= q
bool td_search(const Graph& g, int k, int q);

enum class MembershipMethod { Search, Game };

struct MembershipResult {
    bool member = false;
    std::optional<DecompositionWitness> witness;
};

// k or q absent means unbounded: q only bounds treedepth, k only treewidth
MembershipResult decide_membership(const Graph& g, std::optional<int> k, std::optional<int> q,
                                   MembershipMethod method = MembershipMethod::Search);

// canonical representatives with <= n vertices admitting a witness at (k, q);
// guarded asks for membership of some labelled version in the guarded class
std::vector<Graph> enumerate_class(int n, int k, int q, bool guarded = false);

// one-labelled members of the guarded class, up to labelled isomorphism
std::vector<LabelledGraph> enumerate_guarded_one_labelled(int max_n, int k, int q);

std::string encode_witness_json(const DecompositionWitness& w);
DecompositionWitness decode_witness_json(const std::string& text);

} // namespace homind
