#pragma once

// Simple graphs, labelled graphs and rooted forests: the ground types for
// everything else. Vertices are dense ints 0..n-1; codecs remap names.

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "homind/errors.hpp"

namespace homind {

// dynamic bitset over 64-bit words, sized at construction
class Bitset {
  public:
    Bitset() = default;
    explicit Bitset(int n) : n_(n), w_((n + 63) / 64, 0) {}

    int size() const { return n_; }
    bool test(int i) const { return (w_[i >> 6] >> (i & 63)) & 1; }
    void set(int i) { w_[i >> 6] |= (1ull << (i & 63)); }
    void reset(int i) { w_[i >> 6] &= ~(1ull << (i & 63)); }
    bool any() const;
    int count() const;
    int first() const; // -1 if empty

    Bitset& operator|=(const Bitset& o);
    Bitset& operator&=(const Bitset& o);
    Bitset& operator-=(const Bitset& o); // set difference
    bool intersects(const Bitset& o) const;
    bool is_subset_of(const Bitset& o) const;

    bool operator==(const Bitset& o) const = default;
    bool operator<(const Bitset& o) const { return w_ < o.w_; }
    std::size_t hash() const;

    std::vector<int> to_vector() const;

  private:
    int n_ = 0;
    std::vector<std::uint64_t> w_;
};

class Graph {
  public:
    Graph() = default;
    explicit Graph(int n);

    int n() const { return n_; }
    int edge_count() const { return static_cast<int>(edges_.size()); }
    const std::vector<std::pair<int, int>>& edges() const { return edges_; }
    const std::vector<int>& neighbours(int v) const { return adj_[v]; }
    int degree(int v) const { return static_cast<int>(adj_[v].size()); }

    bool has_edge(int u, int v) const;
    // rejects loops and out-of-range endpoints; parallel adds are ignored
    void add_edge(int u, int v);

    // disjoint union, vertices of o shifted by n()
    static Graph disjoint_union(const Graph& a, const Graph& b);
    std::vector<std::vector<int>> connected_components() const;
    Graph induced(const std::vector<int>& verts, std::vector<int>* old_to_new = nullptr) const;

    bool operator==(const Graph& o) const { return n_ == o.n_ && edges_ == o.edges_; }

  private:
    void sort_edges();
    int n_ = 0;
    std::vector<std::pair<int, int>> edges_; // u < v, sorted, unique
    std::vector<std::vector<int>> adj_;
};

// generators
Graph make_path(int n);
Graph make_cycle(int n);
Graph make_clique(int n);
// vertices (i,j), 0 <= i < h, 0 <= j < l, index i*l + j; edges between
// orthogonal neighbours only
Graph make_grid(int h, int l);
inline int grid_vertex(int l, int i, int j) { return i * l + j; }

class LabelledGraph {
  public:
    LabelledGraph() = default;
    LabelledGraph(Graph g, int arity);

    const Graph& graph() const { return g_; }
    Graph& graph() { return g_; }
    int n() const { return g_.n(); }
    int arity() const { return arity_; }
    void set_arity(int k);

    // labels are 1-based; -1 means unassigned
    int label_vertex(int label) const;
    bool label_assigned(int label) const { return label_vertex(label) >= 0; }
    void set_label(int label, int v);
    void remove_label(int label);
    std::vector<int> assigned_labels() const;
    std::vector<int> labels_of_vertex(int v) const;
    bool vertex_labelled(int v) const;
    bool fully_labelled() const; // every vertex carries at least one label
    int labelled_vertex_count() const;

    bool operator==(const LabelledGraph& o) const {
        return arity_ == o.arity_ && g_ == o.g_ && label_to_vertex_ == o.label_to_vertex_;
    }

  private:
    Graph g_;
    int arity_ = 0;
    std::vector<int> label_to_vertex_; // size arity_, entries -1 or vertex
};

// G(l -> v) and label removal, as value operations
LabelledGraph with_label(const LabelledGraph& g, int label, int v);
LabelledGraph without_label(const LabelledGraph& g, int label);

// glue product: disjoint union, vertices with equal labels identified, loops
// and parallel edges suppressed. `loop_created` reports whether a loop was
// suppressed (the quantum-graph product drops such terms instead).
LabelledGraph glue_product(const LabelledGraph& a, const LabelledGraph& b,
                           bool* loop_created = nullptr);

// contract edge uv; the merged vertex keeps the union of labels
LabelledGraph contract_edge(const LabelledGraph& g, int u, int v);

class RootedForest {
  public:
    RootedForest() = default;
    explicit RootedForest(int n) : parent_(n, -1) {}

    int size() const { return static_cast<int>(parent_.size()); }
    int parent(int v) const { return parent_[v]; }
    void set_parent(int v, int p) { parent_[v] = p; }
    bool is_root(int v) const { return parent_[v] < 0; }
    std::vector<int> roots() const;
    std::vector<int> children(int v) const;

    // throws ValidationError on cycles or bad indices
    void validate() const;

    bool ancestor_or_equal(int u, int v) const; // u on the root path of v
    std::vector<int> path_to_root(int v) const; // v, parent(v), ..., root
    int depth(int v) const;                     // vertices on root path, >= 1
    int height() const;                         // 0 for empty forest

  private:
    std::vector<int> parent_;
};

} // namespace homind
