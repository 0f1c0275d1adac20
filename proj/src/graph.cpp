#include "homind/graph.hpp"

#include <algorithm>
#include <bit>
#include <cstdlib>

namespace homind {

Limits& limits() {
    static Limits l = [] {
        Limits x;
        if (const char* env = std::getenv("HOMIND_MAX_N")) {
            int v = std::atoi(env);
            if (v > 0) {
                x.canonical_max_n = std::max(x.canonical_max_n, v);
                x.iso_max_n = std::max(x.iso_max_n, v);
                x.game_max_n = std::max(x.game_max_n, v);
                x.exhaustive_search_max_n = std::max(x.exhaustive_search_max_n, v);
                x.enumerate_max_n = std::max(x.enumerate_max_n, v);
            }
        }
        return x;
    }();
    return l;
}

bool Bitset::any() const {
    for (auto w : w_)
        if (w) return true;
    return false;
}

int Bitset::count() const {
    int c = 0;
    for (auto w : w_) c += std::popcount(w);
    return c;
}

int Bitset::first() const {
    for (std::size_t i = 0; i < w_.size(); ++i)
        if (w_[i]) return static_cast<int>(i * 64 + std::countr_zero(w_[i]));
    return -1;
}

Bitset& Bitset::operator|=(const Bitset& o) {
    for (std::size_t i = 0; i < w_.size(); ++i) w_[i] |= o.w_[i];
    return *this;
}

Bitset& Bitset::operator&=(const Bitset& o) {
    for (std::size_t i = 0; i < w_.size(); ++i) w_[i] &= o.w_[i];
    return *this;
}

Bitset& Bitset::operator-=(const Bitset& o) {
    for (std::size_t i = 0; i < w_.size(); ++i) w_[i] &= ~o.w_[i];
    return *this;
}

bool Bitset::intersects(const Bitset& o) const {
    for (std::size_t i = 0; i < w_.size(); ++i)
        if (w_[i] & o.w_[i]) return true;
    return false;
}

bool Bitset::is_subset_of(const Bitset& o) const {
    for (std::size_t i = 0; i < w_.size(); ++i)
        if (w_[i] & ~o.w_[i]) return false;
    return true;
}

std::size_t Bitset::hash() const {
    std::size_t h = 1469598103934665603ull;
    for (auto w : w_) {
        h ^= w;
        h *= 1099511628211ull;
    }
    return h;
}

std::vector<int> Bitset::to_vector() const {
    std::vector<int> out;
    for (int i = 0; i < n_; ++i)
        if (test(i)) out.push_back(i);
    return out;
}

Graph::Graph(int n) : n_(n), adj_(n) {
    if (n < 0) throw ValidationError("negative vertex count");
}

bool Graph::has_edge(int u, int v) const {
    if (u == v) return false;
    for (int w : adj_[u])
        if (w == v) return true;
    return false;
}

void Graph::add_edge(int u, int v) {
    if (u < 0 || v < 0 || u >= n_ || v >= n_)
        throw ValidationError("edge endpoint out of range: " + std::to_string(u) + "-" +
                              std::to_string(v));
    if (u == v) throw ValidationError("loop rejected at vertex " + std::to_string(u));
    if (has_edge(u, v)) return;
    if (u > v) std::swap(u, v);
    edges_.emplace_back(u, v);
    adj_[u].push_back(v);
    adj_[v].push_back(u);
    sort_edges();
}

void Graph::sort_edges() {
    std::sort(edges_.begin(), edges_.end());
    for (auto& a : adj_) std::sort(a.begin(), a.end());
}

Graph Graph::disjoint_union(const Graph& a, const Graph& b) {
    Graph g(a.n() + b.n());
    for (auto [u, v] : a.edges()) g.add_edge(u, v);
    for (auto [u, v] : b.edges()) g.add_edge(u + a.n(), v + a.n());
    return g;
}

std::vector<std::vector<int>> Graph::connected_components() const {
    std::vector<int> comp(n_, -1);
    std::vector<std::vector<int>> out;
    for (int s = 0; s < n_; ++s) {
        if (comp[s] >= 0) continue;
        int id = static_cast<int>(out.size());
        out.emplace_back();
        std::vector<int> stack{s};
        comp[s] = id;
        while (!stack.empty()) {
            int v = stack.back();
            stack.pop_back();
            out[id].push_back(v);
            for (int w : adj_[v])
                if (comp[w] < 0) {
                    comp[w] = id;
                    stack.push_back(w);
                }
        }
        std::sort(out[id].begin(), out[id].end());
    }
    return out;
}

Graph Graph::induced(const std::vector<int>& verts, std::vector<int>* old_to_new) const {
    std::vector<int> map(n_, -1);
    for (std::size_t i = 0; i < verts.size(); ++i) map[verts[i]] = static_cast<int>(i);
    Graph g(static_cast<int>(verts.size()));
    for (auto [u, v] : edges_)
        if (map[u] >= 0 && map[v] >= 0) g.add_edge(map[u], map[v]);
    if (old_to_new) *old_to_new = std::move(map);
    return g;
}

Graph make_path(int n) {
    if (n < 1) throw ValidationError("path needs at least one vertex");
    Graph g(n);
    for (int i = 0; i + 1 < n; ++i) g.add_edge(i, i + 1);
    return g;
}

Graph make_cycle(int n) {
    if (n < 1) throw ValidationError("cycle needs at least one vertex");
    Graph g(n);
    if (n == 1) return g;
    if (n == 2) { g.add_edge(0, 1); return g; }
    for (int i = 0; i < n; ++i) g.add_edge(i, (i + 1) % n);
    return g;
}

Graph make_clique(int n) {
    if (n < 1) throw ValidationError("clique needs at least one vertex");
    Graph g(n);
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) g.add_edge(i, j);
    return g;
}

Graph make_grid(int h, int l) {
    if (h < 1 || l < 1) throw ValidationError("grid dimensions must be positive");
    Graph g(h * l);
    for (int i = 0; i < h; ++i)
        for (int j = 0; j < l; ++j) {
            if (i + 1 < h) g.add_edge(grid_vertex(l, i, j), grid_vertex(l, i + 1, j));
            if (j + 1 < l) g.add_edge(grid_vertex(l, i, j), grid_vertex(l, i, j + 1));
        }
    return g;
}

LabelledGraph::LabelledGraph(Graph g, int arity)
    : g_(std::move(g)), arity_(arity), label_to_vertex_(arity, -1) {
    if (arity < 0) throw ValidationError("negative label arity");
}

void LabelledGraph::set_arity(int k) {
    if (k < arity_) {
        for (int l = k + 1; l <= arity_; ++l)
            if (label_assigned(l)) throw ValidationError("cannot shrink arity below assigned label");
    }
    label_to_vertex_.resize(k, -1);
    arity_ = k;
}

int LabelledGraph::label_vertex(int label) const {
    if (label < 1 || label > arity_) return -1;
    return label_to_vertex_[label - 1];
}

void LabelledGraph::set_label(int label, int v) {
    if (label < 1 || label > arity_)
        throw ValidationError("label " + std::to_string(label) + " outside arity " +
                              std::to_string(arity_));
    if (v < 0 || v >= n()) throw ValidationError("label target vertex out of range");
    label_to_vertex_[label - 1] = v;
}

void LabelledGraph::remove_label(int label) {
    if (label < 1 || label > arity_)
        throw ValidationError("label " + std::to_string(label) + " outside arity " +
                              std::to_string(arity_));
    label_to_vertex_[label - 1] = -1;
}

std::vector<int> LabelledGraph::assigned_labels() const {
    std::vector<int> out;
    for (int l = 1; l <= arity_; ++l)
        if (label_assigned(l)) out.push_back(l);
    return out;
}

std::vector<int> LabelledGraph::labels_of_vertex(int v) const {
    std::vector<int> out;
    for (int l = 1; l <= arity_; ++l)
        if (label_vertex(l) == v) out.push_back(l);
    return out;
}

bool LabelledGraph::vertex_labelled(int v) const {
    for (int l = 1; l <= arity_; ++l)
        if (label_vertex(l) == v) return true;
    return false;
}

bool LabelledGraph::fully_labelled() const {
    for (int v = 0; v < n(); ++v)
        if (!vertex_labelled(v)) return false;
    return true;
}

int LabelledGraph::labelled_vertex_count() const {
    int c = 0;
    for (int v = 0; v < n(); ++v)
        if (vertex_labelled(v)) ++c;
    return c;
}

LabelledGraph with_label(const LabelledGraph& g, int label, int v) {
    LabelledGraph r = g;
    r.set_label(label, v);
    return r;
}

LabelledGraph without_label(const LabelledGraph& g, int label) {
    LabelledGraph r = g;
    r.remove_label(label);
    return r;
}

LabelledGraph glue_product(const LabelledGraph& a, const LabelledGraph& b, bool* loop_created) {
    int k = std::max(a.arity(), b.arity());
    if (loop_created) *loop_created = false;

    // vertex classes: b-vertices sharing a label with an a-vertex collapse onto it
    std::vector<int> map_b(b.n(), -1);
    for (int l = 1; l <= k; ++l) {
        int va = a.label_vertex(l), vb = b.label_vertex(l);
        if (va >= 0 && vb >= 0) {
            if (map_b[vb] >= 0 && map_b[vb] != va) {
                // vb already glued to another a-vertex via a different label;
                // that identifies two a-vertices, handled below via union-find
            }
        }
    }
    // union-find over a.n() + b.n() combined ids
    int total = a.n() + b.n();
    std::vector<int> uf(total);
    for (int i = 0; i < total; ++i) uf[i] = i;
    auto find = [&](int x) {
        while (uf[x] != x) x = uf[x] = uf[uf[x]];
        return x;
    };
    auto unite = [&](int x, int y) { uf[find(x)] = find(y); };
    for (int l = 1; l <= k; ++l) {
        int va = a.label_vertex(l), vb = b.label_vertex(l);
        if (va >= 0 && vb >= 0) unite(va, a.n() + vb);
    }
    std::vector<int> rep(total, -1);
    int nn = 0;
    for (int i = 0; i < total; ++i) {
        int r = find(i);
        if (rep[r] < 0) rep[r] = nn++;
    }
    auto newid = [&](int i) { return rep[find(i)]; };

    Graph g(nn);
    auto add = [&](int u, int v) {
        if (u == v) {
            if (loop_created) *loop_created = true;
            return; // loop suppressed
        }
        g.add_edge(u, v);
    };
    for (auto [u, v] : a.graph().edges()) add(newid(u), newid(v));
    for (auto [u, v] : b.graph().edges()) add(newid(a.n() + u), newid(a.n() + v));

    LabelledGraph out(g, k);
    for (int l = 1; l <= k; ++l) {
        int va = a.label_vertex(l), vb = b.label_vertex(l);
        if (va >= 0) out.set_label(l, newid(va));
        else if (vb >= 0) out.set_label(l, newid(a.n() + vb));
    }
    return out;
}

LabelledGraph contract_edge(const LabelledGraph& g, int u, int v) {
    if (!g.graph().has_edge(u, v))
        throw ValidationError("contract_edge: not an edge: " + std::to_string(u) + "-" +
                              std::to_string(v));
    if (u > v) std::swap(u, v);
    // v merges into u; vertices above v shift down
    std::vector<int> map(g.n());
    for (int i = 0; i < g.n(); ++i) map[i] = i < v ? i : (i == v ? u : i - 1);
    Graph ng(g.n() - 1);
    for (auto [a, b] : g.graph().edges()) {
        int x = map[a], y = map[b];
        if (x != y) ng.add_edge(x, y);
    }
    LabelledGraph out(ng, g.arity());
    for (int l = 1; l <= g.arity(); ++l) {
        int w = g.label_vertex(l);
        if (w >= 0) out.set_label(l, map[w]);
    }
    return out;
}

std::vector<int> RootedForest::roots() const {
    std::vector<int> out;
    for (int v = 0; v < size(); ++v)
        if (is_root(v)) out.push_back(v);
    return out;
}

std::vector<int> RootedForest::children(int v) const {
    std::vector<int> out;
    for (int w = 0; w < size(); ++w)
        if (parent_[w] == v) out.push_back(w);
    return out;
}

void RootedForest::validate() const {
    for (int v = 0; v < size(); ++v) {
        if (parent_[v] >= size()) throw ValidationError("forest parent out of range");
        int u = v, steps = 0;
        while (u >= 0) {
            u = parent_[u];
            if (++steps > size()) throw ValidationError("cycle in forest parent relation");
        }
    }
}

bool RootedForest::ancestor_or_equal(int u, int v) const {
    while (v >= 0) {
        if (v == u) return true;
        v = parent_[v];
    }
    return false;
}

std::vector<int> RootedForest::path_to_root(int v) const {
    std::vector<int> out;
    while (v >= 0) {
        out.push_back(v);
        v = parent_[v];
    }
    return out;
}

int RootedForest::depth(int v) const {
    int d = 0;
    while (v >= 0) {
        ++d;
        v = parent_[v];
    }
    return d;
}

int RootedForest::height() const {
    int h = 0;
    for (int v = 0; v < size(); ++v) h = std::max(h, depth(v));
    return h;
}

} // namespace homind
