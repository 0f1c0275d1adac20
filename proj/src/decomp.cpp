#include "homind/decomp.hpp"

#include <algorithm>
#include <map>
#include <set>

#include <json.hpp>

namespace homind {

std::vector<int> TreeDecomposition::children(int t) const {
    std::vector<int> out;
    for (int s = 0; s < node_count(); ++s)
        if (parent[s] == t) out.push_back(s);
    return out;
}

LabelledGraph ConstructionTree::node_graph(int t) const {
    const Node& nd = nodes[t];
    std::map<int, int> idx;
    for (std::size_t i = 0; i < nd.vertices.size(); ++i) idx[nd.vertices[i]] = static_cast<int>(i);
    Graph g(static_cast<int>(nd.vertices.size()));
    for (auto [u, v] : nd.edges) g.add_edge(idx.at(u), idx.at(v));
    LabelledGraph out(g, arity);
    for (int l = 1; l <= arity; ++l) {
        int v = nd.label_to_vertex[l - 1];
        if (v >= 0) out.set_label(l, idx.at(v));
    }
    return out;
}

int ConstructionTree::elimination_depth() const {
    std::vector<int> memo(nodes.size(), -1);
    // depth of the subtree rooted at t
    auto rec = [&](auto&& self, int t) -> int {
        if (memo[t] >= 0) return memo[t];
        int best = 0;
        for (int c : nodes[t].children) best = std::max(best, self(self, c));
        if (nodes[t].kind == Kind::Eliminate) best += 1;
        return memo[t] = best;
    };
    return nodes.empty() ? 0 : rec(rec, root);
}

int td_depth_at_root(const TreeDecomposition& td, int root) {
    if (td.node_count() == 0) return 0;
    int n = 0;
    for (const auto& b : td.bags)
        for (int v : b) n = std::max(n, v + 1);
    std::vector<int> seen(n, 0);
    // children lists under the requested root
    std::vector<std::vector<int>> adj(td.node_count());
    for (int t = 0; t < td.node_count(); ++t)
        if (td.parent[t] >= 0) {
            adj[t].push_back(td.parent[t]);
            adj[td.parent[t]].push_back(t);
        }
    int best = 0;
    int distinct = 0;
    auto dfs = [&](auto&& self, int t, int from) -> void {
        std::vector<int> added;
        for (int v : td.bags[t])
            if (seen[v]++ == 0) {
                ++distinct;
                added.push_back(v);
            }
        best = std::max(best, distinct);
        for (int s : adj[t])
            if (s != from) self(self, s, t);
        distinct -= static_cast<int>(added.size());
        for (int v : td.bags[t]) --seen[v];
    };
    dfs(dfs, root, -1);
    return best;
}

std::pair<int, int> td_best_root(const TreeDecomposition& td) {
    int best_root = 0, best = kInfDepth;
    for (int r = 0; r < td.node_count(); ++r) {
        int d = td_depth_at_root(td, r);
        if (d < best) {
            best = d;
            best_root = r;
        }
    }
    if (td.node_count() == 0) best = 0;
    return {best_root, best};
}

Measures measure(const DecompositionWitness& w) {
    Measures m;
    if (const auto* td = std::get_if<TreeDecomposition>(&w)) {
        int width = -1;
        for (const auto& b : td->bags) width = std::max(width, static_cast<int>(b.size()) - 1);
        m.width = width;
        m.depth = td_best_root(*td).second;
    } else if (const auto* pfc = std::get_if<PebbleForestCover>(&w)) {
        m.depth = pfc->forest.height();
    } else if (const auto* ct = std::get_if<ConstructionTree>(&w)) {
        m.elimination_depth = ct->elimination_depth();
        m.depth = *m.elimination_depth;
    }
    return m;
}

namespace {

Verdict fail(const std::string& msg) { return {false, msg}; }

Verdict verify_td(const Graph& g, const TreeDecomposition& td, int k, int q) {
    int m = td.node_count();
    if (m == 0) {
        if (g.n() == 0) return {};
        return fail("empty decomposition for a non-empty graph");
    }
    if (td.root < 0 || td.root >= m || td.parent[td.root] != -1)
        return fail("bad root node");
    int roots = 0;
    for (int t = 0; t < m; ++t) {
        if (td.parent[t] == -1) ++roots;
        else if (td.parent[t] < 0 || td.parent[t] >= m) return fail("parent out of range");
    }
    if (roots != 1) return fail("decomposition tree must have exactly one root");
    // acyclicity via reachability from root
    {
        std::vector<int> depth(m, -1);
        for (int t = 0; t < m; ++t) {
            int u = t, steps = 0;
            while (u != -1) {
                u = td.parent[u];
                if (++steps > m) return fail("cycle in decomposition tree");
            }
        }
    }
    for (const auto& b : td.bags)
        for (int v : b)
            if (v < 0 || v >= g.n()) return fail("bag contains a non-vertex");
    // vertex cover
    std::vector<char> covered(g.n(), 0);
    for (const auto& b : td.bags)
        for (int v : b) covered[v] = 1;
    for (int v = 0; v < g.n(); ++v)
        if (!covered[v]) return fail("vertex " + std::to_string(v) + " in no bag");
    // edge cover
    for (auto [u, v] : g.edges()) {
        bool ok = false;
        for (const auto& b : td.bags) {
            bool bu = std::binary_search(b.begin(), b.end(), u);
            bool bv = std::binary_search(b.begin(), b.end(), v);
            if (bu && bv) { ok = true; break; }
        }
        if (!ok)
            return fail("edge " + std::to_string(u) + "-" + std::to_string(v) + " in no bag");
    }
    // connectivity of bag preimages
    for (int v = 0; v < g.n(); ++v) {
        std::vector<int> nodes_with;
        for (int t = 0; t < m; ++t)
            if (std::binary_search(td.bags[t].begin(), td.bags[t].end(), v)) nodes_with.push_back(t);
        if (nodes_with.empty()) continue;
        std::set<int> inset(nodes_with.begin(), nodes_with.end());
        std::vector<int> stack{nodes_with[0]};
        std::set<int> seen{nodes_with[0]};
        while (!stack.empty()) {
            int t = stack.back();
            stack.pop_back();
            std::vector<int> nb;
            if (td.parent[t] >= 0) nb.push_back(td.parent[t]);
            for (int s = 0; s < m; ++s)
                if (td.parent[s] == t) nb.push_back(s);
            for (int s : nb)
                if (inset.count(s) && !seen.count(s)) {
                    seen.insert(s);
                    stack.push_back(s);
                }
        }
        if (seen.size() != inset.size())
            return fail("bags containing vertex " + std::to_string(v) + " are not connected");
    }
    for (const auto& b : td.bags)
        if (static_cast<int>(b.size()) > k)
            return fail("bag larger than " + std::to_string(k) + " (width bound exceeded)");
    int dep = td_depth_at_root(td, td.root);
    if (dep > q)
        return fail("depth " + std::to_string(dep) + " exceeds bound " + std::to_string(q));
    return {};
}

Verdict verify_pfc(const Graph& g, const PebbleForestCover& pfc, int k, int q) {
    if (pfc.forest.size() != g.n()) return fail("forest is not over V(G)");
    try {
        pfc.forest.validate();
    } catch (const ValidationError& e) {
        return fail(e.what());
    }
    if (static_cast<int>(pfc.pebble.size()) != g.n()) return fail("pebbling not total");
    for (int v = 0; v < g.n(); ++v)
        if (pfc.pebble[v] < 1 || pfc.pebble[v] > k)
            return fail("pebble of vertex " + std::to_string(v) + " outside 1.." + std::to_string(k));
    for (auto [u, v] : g.edges()) {
        bool uv = pfc.forest.ancestor_or_equal(u, v);
        bool vu = pfc.forest.ancestor_or_equal(v, u);
        if (!uv && !vu)
            return fail("edge " + std::to_string(u) + "-" + std::to_string(v) +
                        " joins incomparable vertices");
        int lo = uv ? u : v, hi = uv ? v : u; // lo strictly above hi
        if (lo == hi) continue;
        // walk from hi up to (but excluding) lo
        int w = hi;
        while (w != lo) {
            if (pfc.pebble[w] == pfc.pebble[lo])
                return fail("edge " + std::to_string(u) + "-" + std::to_string(v) + ": pebble " +
                            std::to_string(pfc.pebble[lo]) + " of vertex " + std::to_string(lo) +
                            " reused at vertex " + std::to_string(w));
            w = pfc.forest.parent(w);
        }
    }
    int h = pfc.forest.height();
    if (h > q) return fail("height " + std::to_string(h) + " exceeds bound " + std::to_string(q));
    return {};
}

Verdict verify_ctree_impl(const std::vector<int>& want_vertices,
                          const std::vector<std::pair<int, int>>& want_edges,
                          const std::vector<int>& want_labels, const ConstructionTree& ct, int k,
                          int q, bool guarded) {
    if (ct.nodes.empty()) return fail("empty construction tree");
    if (ct.arity > k) return fail("label arity exceeds " + std::to_string(k));
    if (ct.root < 0 || ct.root >= static_cast<int>(ct.nodes.size())) return fail("bad root index");
    // tree-ness
    {
        std::vector<int> indeg(ct.nodes.size(), 0);
        for (const auto& nd : ct.nodes)
            for (int c : nd.children) {
                if (c < 0 || c >= static_cast<int>(ct.nodes.size()))
                    return fail("child index out of range");
                ++indeg[c];
            }
        for (std::size_t t = 0; t < ct.nodes.size(); ++t) {
            if (static_cast<int>(t) == ct.root) {
                if (indeg[t] != 0) return fail("root has a parent");
            } else if (indeg[t] != 1) {
                return fail("node " + std::to_string(t) + " does not have exactly one parent");
            }
        }
    }
    // per-node sanity and the defining conditions
    for (std::size_t t = 0; t < ct.nodes.size(); ++t) {
        const auto& nd = ct.nodes[t];
        if (static_cast<int>(nd.label_to_vertex.size()) != ct.arity)
            return fail("node label table has wrong arity");
        std::set<int> vs(nd.vertices.begin(), nd.vertices.end());
        for (auto [u, v] : nd.edges)
            if (!vs.count(u) || !vs.count(v)) return fail("node edge endpoint not a node vertex");
        for (int l = 1; l <= ct.arity; ++l) {
            int v = nd.label_to_vertex[l - 1];
            if (v >= 0 && !vs.count(v)) return fail("label on a vertex missing from the node");
        }
        auto labelled = [&](int v) {
            for (int l = 1; l <= ct.arity; ++l)
                if (nd.label_to_vertex[l - 1] == v) return true;
            return false;
        };
        if (nd.children.empty()) {
            for (int v : nd.vertices)
                if (!labelled(v))
                    return fail("leaf node " + std::to_string(t) + " has unlabelled vertex " +
                                std::to_string(v));
        } else if (nd.children.size() == 1) {
            const auto& ch = ct.nodes[nd.children[0]];
            int l = nd.elim_label;
            if (l < 1 || l > ct.arity) return fail("elimination label outside arity");
            if (nd.label_to_vertex[l - 1] >= 0)
                return fail("eliminated label still assigned at the parent");
            int chv = ch.label_to_vertex[l - 1];
            if (chv < 0) return fail("eliminated label unassigned in the child");
            for (int j = 1; j <= ct.arity; ++j)
                if (j != l && nd.label_to_vertex[j - 1] != ch.label_to_vertex[j - 1])
                    return fail("elimination node changes a label other than " + std::to_string(l));
            if (nd.vertices != ch.vertices || nd.edges != ch.edges)
                return fail("elimination node changes the graph");
            if (guarded) {
                bool has_labelled_nb = false;
                for (auto [u, v] : ch.edges) {
                    int other = -1;
                    if (u == chv) other = v;
                    if (v == chv) other = u;
                    if (other < 0) continue;
                    for (int j = 1; j <= ct.arity; ++j)
                        if (j != l && ch.label_to_vertex[j - 1] == other) has_labelled_nb = true;
                }
                if (!has_labelled_nb)
                    return fail("guarded violation: label " + std::to_string(l) +
                                " removed at node " + std::to_string(t) +
                                " without a labelled neighbour");
            }
        } else {
            // product node
            std::set<int> uv;
            std::set<std::pair<int, int>> ue;
            std::map<int, std::set<int>> owner; // vertex -> children containing it
            for (int c : nd.children) {
                const auto& ch = ct.nodes[c];
                for (int v : ch.vertices) {
                    uv.insert(v);
                    owner[v].insert(c);
                }
                for (auto e : ch.edges) ue.insert(e);
            }
            if (std::vector<int>(uv.begin(), uv.end()) != nd.vertices)
                return fail("product node vertices differ from the union of children");
            if (std::set<std::pair<int, int>>(nd.edges.begin(), nd.edges.end()) != ue)
                return fail("product node edges differ from the union of children");
            // labels must agree across children and match the parent union
            for (int l = 1; l <= ct.arity; ++l) {
                int seen = -1;
                for (int c : nd.children) {
                    int v = ct.nodes[c].label_to_vertex[l - 1];
                    if (v < 0) continue;
                    if (seen >= 0 && seen != v)
                        return fail("label " + std::to_string(l) +
                                    " sits on different vertices in two factors");
                    seen = v;
                }
                if (nd.label_to_vertex[l - 1] != seen)
                    return fail("product node labels differ from the union of children labels");
            }
            // shared vertices must be identified through a common label
            for (auto& [v, cs] : owner) {
                if (cs.size() < 2) continue;
                for (int c1 : cs)
                    for (int c2 : cs) {
                        if (c1 >= c2) continue;
                        bool common = false;
                        for (int l = 1; l <= ct.arity; ++l)
                            if (ct.nodes[c1].label_to_vertex[l - 1] == v &&
                                ct.nodes[c2].label_to_vertex[l - 1] == v)
                                common = true;
                        if (!common)
                            return fail("vertex " + std::to_string(v) +
                                        " shared by factors without a common label");
                    }
            }
        }
    }
    const auto& r = ct.nodes[ct.root];
    if (r.vertices != want_vertices) return fail("root graph has wrong vertex set");
    if (r.edges != want_edges) return fail("root graph has wrong edge set");
    for (int l = 1; l <= ct.arity; ++l)
        if (r.label_to_vertex[l - 1] != (l <= static_cast<int>(want_labels.size())
                                             ? want_labels[l - 1]
                                             : -1))
            return fail("root labels differ from the target graph");
    for (std::size_t l = ct.arity; l < want_labels.size(); ++l)
        if (want_labels[l] >= 0) return fail("target labels exceed tree arity");
    int d = ct.elimination_depth();
    if (d > q)
        return fail("elimination depth " + std::to_string(d) + " exceeds bound " +
                    std::to_string(q));
    return {};
}

} // namespace

Verdict verify(const Graph& g, const DecompositionWitness& w, int k, int q, bool guarded) {
    if (const auto* td = std::get_if<TreeDecomposition>(&w)) return verify_td(g, *td, k, q);
    if (const auto* pfc = std::get_if<PebbleForestCover>(&w)) return verify_pfc(g, *pfc, k, q);
    const auto& ct = std::get<ConstructionTree>(w);
    std::vector<int> verts(g.n());
    for (int v = 0; v < g.n(); ++v) verts[v] = v;
    return verify_ctree_impl(verts, g.edges(), {}, ct, k, q, guarded);
}

Verdict verify_labelled(const LabelledGraph& f, const ConstructionTree& w, int k, int q,
                        bool guarded) {
    std::vector<int> verts(f.n());
    for (int v = 0; v < f.n(); ++v) verts[v] = v;
    std::vector<int> labels(f.arity(), -1);
    for (int l = 1; l <= f.arity(); ++l) labels[l - 1] = f.label_vertex(l);
    return verify_ctree_impl(verts, f.graph().edges(), labels, w, k, q, guarded);
}

bool is_nice(const TreeDecomposition& td) {
    int m = td.node_count();
    if (m == 0) return false;
    if (!td.bags[td.root].empty()) return false;
    for (int t = 0; t < m; ++t) {
        auto ch = td.children(t);
        if (ch.empty()) {
            if (!td.bags[t].empty()) return false;
            continue;
        }
        if (ch.size() == 1) {
            const auto& a = td.bags[t];
            const auto& b = td.bags[ch[0]];
            std::vector<int> diff_ab, diff_ba;
            std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(diff_ab));
            std::set_difference(b.begin(), b.end(), a.begin(), a.end(), std::back_inserter(diff_ba));
            bool introduce = diff_ab.size() == 1 && diff_ba.empty();
            bool forget = diff_ba.size() == 1 && diff_ab.empty();
            if (!introduce && !forget) return false;
        } else if (ch.size() == 2) {
            if (td.bags[ch[0]] != td.bags[t] || td.bags[ch[1]] != td.bags[t]) return false;
        } else {
            return false;
        }
    }
    return true;
}

namespace {

struct NiceBuilder {
    const TreeDecomposition& src;
    TreeDecomposition out;

    int add_node(std::vector<int> bag, int parent) {
        out.parent.push_back(parent);
        out.bags.push_back(std::move(bag));
        return out.node_count() - 1;
    }

    // chain of single-vertex steps from bag `from` (already materialised as
    // node `at`) down to bag `to`; returns the node holding `to`
    int chain(int at, const std::vector<int>& from, const std::vector<int>& to) {
        std::vector<int> cur = from;
        std::vector<int> drop, add;
        std::set_difference(from.begin(), from.end(), to.begin(), to.end(),
                            std::back_inserter(drop));
        std::set_difference(to.begin(), to.end(), from.begin(), from.end(), std::back_inserter(add));
        for (int v : drop) {
            cur.erase(std::find(cur.begin(), cur.end(), v));
            at = add_node(cur, at);
        }
        for (int v : add) {
            cur.insert(std::lower_bound(cur.begin(), cur.end(), v), v);
            at = add_node(cur, at);
        }
        return at;
    }

    // binary join tree over the children of src node t, then a chain to each
    void join_split(int at, int t, const std::vector<int>& kids) {
        if (kids.size() == 1) {
            int bottom = chain(at, src.bags[t], src.bags[kids[0]]);
            build(kids[0], bottom);
            return;
        }
        std::size_t half = kids.size() / 2;
        std::vector<int> left(kids.begin(), kids.begin() + half);
        std::vector<int> right(kids.begin() + half, kids.end());
        int ln = add_node(src.bags[t], at);
        int rn = add_node(src.bags[t], at);
        join_split(ln, t, left);
        join_split(rn, t, right);
    }

    // materialise src subtree at t; `at` is the new node already holding bag(t)
    void build(int t, int at) {
        auto kids = src.children(t);
        if (kids.empty()) {
            chain(at, src.bags[t], {});
            return;
        }
        join_split(at, t, kids);
    }
};

// drop single-child nodes whose bag equals the child's
TreeDecomposition contract_equal_pairs(const TreeDecomposition& td) {
    TreeDecomposition out = td;
    bool changed = true;
    while (changed) {
        changed = false;
        for (int t = 0; t < out.node_count(); ++t) {
            auto ch = out.children(t);
            if (ch.size() == 1 && out.bags[t] == out.bags[ch[0]] && t != ch[0]) {
                int s = ch[0];
                // splice s out
                TreeDecomposition next;
                next.root = out.root;
                std::vector<int> remap(out.node_count(), -1);
                int m = 0;
                for (int x = 0; x < out.node_count(); ++x)
                    if (x != s) remap[x] = m++;
                next.parent.resize(m);
                next.bags.resize(m);
                for (int x = 0; x < out.node_count(); ++x) {
                    if (x == s) continue;
                    int p = out.parent[x];
                    if (p == s) p = t;
                    next.parent[remap[x]] = p < 0 ? -1 : remap[p];
                    next.bags[remap[x]] = out.bags[x];
                }
                next.root = remap[out.root];
                out = std::move(next);
                changed = true;
                break;
            }
        }
    }
    return out;
}

} // namespace

TreeDecomposition make_nice(const TreeDecomposition& td) {
    TreeDecomposition base = td;
    if (base.node_count() == 0) {
        base.root = 0;
        base.parent = {-1};
        base.bags = {{}};
        return base;
    }
    NiceBuilder nb{base, {}};
    nb.out.root = 0;
    int top = nb.add_node({}, -1);
    int start = nb.chain(top, {}, base.bags[base.root]);
    nb.build(base.root, start);
    return contract_equal_pairs(nb.out);
}

namespace {

// ---- conversion primitives ----

TreeDecomposition ctree_to_td(const ConstructionTree& ct) {
    TreeDecomposition td;
    td.root = ct.root;
    td.parent.assign(ct.nodes.size(), -1);
    td.bags.resize(ct.nodes.size());
    for (std::size_t t = 0; t < ct.nodes.size(); ++t) {
        for (int c : ct.nodes[t].children) td.parent[c] = static_cast<int>(t);
        std::set<int> bag;
        for (int l = 1; l <= ct.arity; ++l) {
            int v = ct.nodes[t].label_to_vertex[l - 1];
            if (v >= 0) bag.insert(v);
        }
        td.bags[t] = std::vector<int>(bag.begin(), bag.end());
    }
    return td;
}

struct CtreeBuilder {
    const Graph& g;
    const TreeDecomposition& td; // nice
    ConstructionTree ct;
    std::vector<int> colour;           // vertex -> label
    std::vector<std::vector<int>> below; // td node -> sorted vertices of its subtree bags

    void collect_below(int t) {
        std::set<int> acc(td.bags[t].begin(), td.bags[t].end());
        for (int c : td.children(t)) {
            collect_below(c);
            acc.insert(below[c].begin(), below[c].end());
        }
        below[t] = std::vector<int>(acc.begin(), acc.end());
    }

    void assign_colours(int t) {
        // root-down: a vertex gets its colour where it first appears
        for (int c : td.children(t)) {
            std::vector<int> fresh;
            std::set_difference(td.bags[c].begin(), td.bags[c].end(), td.bags[t].begin(),
                                td.bags[t].end(), std::back_inserter(fresh));
            for (int v : fresh) {
                if (colour[v] >= 0) continue;
                std::set<int> used;
                for (int w : td.bags[t])
                    if (colour[w] >= 0) used.insert(colour[w]);
                // bags[c] minus v are exactly bag[t] here for a forget step,
                // but taking the parent bag matches the construction
                int l = 1;
                while (used.count(l)) ++l;
                colour[v] = l;
            }
            assign_colours(c);
        }
    }

    int node_of(int t, bool as_leaf_copy) {
        ConstructionTree::Node nd;
        const auto& verts = as_leaf_copy ? td.bags[t] : below[t];
        nd.vertices = verts;
        std::set<int> vs(verts.begin(), verts.end());
        for (auto [u, v] : g.edges())
            if (vs.count(u) && vs.count(v)) nd.edges.emplace_back(u, v);
        std::sort(nd.edges.begin(), nd.edges.end());
        nd.label_to_vertex.assign(ct.arity, -1);
        for (int v : td.bags[t]) nd.label_to_vertex[colour[v] - 1] = v;
        ct.nodes.push_back(std::move(nd));
        return static_cast<int>(ct.nodes.size()) - 1;
    }

    int build(int t) {
        auto kids = td.children(t);
        int me = node_of(t, false);
        if (kids.empty()) {
            ct.nodes[me].kind = ConstructionTree::Kind::Leaf;
            return me;
        }
        if (kids.size() == 2) {
            ct.nodes[me].kind = ConstructionTree::Kind::Product;
            int a = build(kids[0]);
            int b = build(kids[1]);
            ct.nodes[me].children = {a, b};
            return me;
        }
        int s = kids[0];
        const auto& a = td.bags[t];
        const auto& b = td.bags[s];
        std::vector<int> gone, fresh;
        std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(gone));
        std::set_difference(b.begin(), b.end(), a.begin(), a.end(), std::back_inserter(fresh));
        if (!fresh.empty()) {
            // forget step in the decomposition: the child bag saw vertex v
            // whose label is removed here
            ct.nodes[me].kind = ConstructionTree::Kind::Eliminate;
            ct.nodes[me].elim_label = colour[fresh[0]];
            int c = build(s);
            ct.nodes[me].children = {c};
            return me;
        }
        // introduce step: product with a fully labelled copy of bag(t)
        ct.nodes[me].kind = ConstructionTree::Kind::Product;
        int leaf = node_of(t, true);
        ct.nodes[leaf].kind = ConstructionTree::Kind::Leaf;
        int c = build(s);
        ct.nodes[me].children = {c, leaf};
        return me;
    }
};

ConstructionTree td_to_ctree(const Graph& g, const TreeDecomposition& given, int k) {
    TreeDecomposition td = make_nice(given);
    CtreeBuilder b{g, td, {}, std::vector<int>(g.n(), -1),
                   std::vector<std::vector<int>>(td.node_count())};
    b.ct.arity = k;
    b.collect_below(td.root);
    b.assign_colours(td.root);
    b.ct.root = b.build(td.root);
    return b.ct;
}

PebbleForestCover td_to_pfc(const Graph& g, const TreeDecomposition& given, int k) {
    TreeDecomposition td = make_nice(given);
    // topmost node containing each vertex
    std::vector<int> top(g.n(), -1);
    std::vector<int> depth(td.node_count(), 0);
    std::vector<int> order; // root-down
    {
        std::vector<int> stack{td.root};
        while (!stack.empty()) {
            int t = stack.back();
            stack.pop_back();
            order.push_back(t);
            for (int c : td.children(t)) {
                depth[c] = depth[t] + 1;
                stack.push_back(c);
            }
        }
    }
    for (int t : order)
        for (int v : td.bags[t])
            if (top[v] < 0 || depth[t] < depth[top[v]] ||
                (depth[t] == depth[top[v]] && t < top[v]))
                top[v] = t;
    PebbleForestCover pfc{RootedForest(g.n()), std::vector<int>(g.n(), 0)};
    // parent of v: the vertex whose top node is the deepest strict ancestor
    for (int v = 0; v < g.n(); ++v) {
        int best = -1, best_depth = -1;
        for (int u = 0; u < g.n(); ++u) {
            if (u == v || top[u] == top[v]) continue;
            // ancestor test in the td tree
            int t = top[v];
            bool anc = false;
            while (t >= 0) {
                if (t == top[u]) { anc = true; break; }
                t = td.parent[t];
            }
            if (anc && depth[top[u]] > best_depth) {
                best = u;
                best_depth = depth[top[u]];
            }
        }
        pfc.forest.set_parent(v, best);
    }
    // pebbles root-down
    std::vector<int> vs(g.n());
    for (int v = 0; v < g.n(); ++v) vs[v] = v;
    std::sort(vs.begin(), vs.end(), [&](int a, int b) { return depth[top[a]] < depth[top[b]]; });
    for (int v : vs) {
        std::set<int> used;
        for (int w : td.bags[top[v]])
            if (w != v && pfc.pebble[w] > 0) used.insert(pfc.pebble[w]);
        int p = 1;
        while (used.count(p)) ++p;
        if (p > k) throw ValidationError("pebble assignment needs more than k pebbles");
        pfc.pebble[v] = p;
    }
    return pfc;
}

TreeDecomposition pfc_to_td(const Graph& g, const PebbleForestCover& pfc) {
    TreeDecomposition td;
    int n = g.n();
    // node 0 is a fresh empty root; node v+1 corresponds to vertex v
    td.root = 0;
    td.parent.assign(n + 1, -1);
    td.bags.assign(n + 1, {});
    for (int v = 0; v < n; ++v) {
        int p = pfc.forest.parent(v);
        td.parent[v + 1] = p < 0 ? 0 : p + 1;
        // active ancestors of v
        std::vector<int> bag;
        for (int u : pfc.forest.path_to_root(v)) {
            bool active = true;
            int w = v;
            while (w != u) {
                if (pfc.pebble[w] == pfc.pebble[u]) { active = false; break; }
                w = pfc.forest.parent(w);
            }
            if (active) bag.push_back(u);
        }
        std::sort(bag.begin(), bag.end());
        td.bags[v + 1] = std::move(bag);
    }
    return td;
}

} // namespace

DecompositionWitness convert(const Graph& g, const DecompositionWitness& w, WitnessKind target) {
    WitnessKind src = std::holds_alternative<TreeDecomposition>(w) ? WitnessKind::Td
                      : std::holds_alternative<PebbleForestCover>(w) ? WitnessKind::Pfc
                                                                     : WitnessKind::Ctree;
    if (src == target) return w;
    // label arity / pebble count needed for td -> ctree/pfc: derive from the
    // witness itself (max bag size or pebbles in use)
    auto td_arity = [](const TreeDecomposition& td) {
        int k = 1;
        for (const auto& b : td.bags) k = std::max(k, static_cast<int>(b.size()));
        return k;
    };
    if (src == WitnessKind::Td) {
        const auto& td = std::get<TreeDecomposition>(w);
        int k = td_arity(td);
        if (target == WitnessKind::Ctree) return td_to_ctree(g, td, k);
        return td_to_pfc(g, td, k);
    }
    if (src == WitnessKind::Pfc) {
        const auto& pfc = std::get<PebbleForestCover>(w);
        TreeDecomposition td = pfc_to_td(g, pfc);
        if (target == WitnessKind::Td) return td;
        int k = 1;
        for (int p : pfc.pebble) k = std::max(k, p);
        return td_to_ctree(g, td, k);
    }
    const auto& ct = std::get<ConstructionTree>(w);
    TreeDecomposition td = ctree_to_td(ct);
    if (target == WitnessKind::Td) return td;
    return td_to_pfc(g, td, ct.arity);
}

std::string encode_witness_json(const DecompositionWitness& w) {
    nlohmann::ordered_json j;
    if (const auto* td = std::get_if<TreeDecomposition>(&w)) {
        j["kind"] = "td";
        j["root"] = td->root;
        j["parent"] = td->parent;
        j["bags"] = td->bags;
    } else if (const auto* pfc = std::get_if<PebbleForestCover>(&w)) {
        j["kind"] = "pfc";
        std::vector<int> parent(pfc->forest.size());
        for (int v = 0; v < pfc->forest.size(); ++v) parent[v] = pfc->forest.parent(v);
        j["parent"] = parent;
        j["pebble"] = pfc->pebble;
    } else {
        const auto& ct = std::get<ConstructionTree>(w);
        j["kind"] = "ctree";
        j["arity"] = ct.arity;
        j["root"] = ct.root;
        j["nodes"] = nlohmann::ordered_json::array();
        for (const auto& nd : ct.nodes) {
            nlohmann::ordered_json jn;
            jn["kind"] = nd.kind == ConstructionTree::Kind::Leaf        ? "leaf"
                         : nd.kind == ConstructionTree::Kind::Eliminate ? "eliminate"
                                                                        : "product";
            if (nd.kind == ConstructionTree::Kind::Eliminate) jn["label"] = nd.elim_label;
            jn["vertices"] = nd.vertices;
            jn["edges"] = nlohmann::ordered_json::array();
            for (auto [u, v] : nd.edges) jn["edges"].push_back({u, v});
            jn["labels"] = nlohmann::ordered_json::object();
            for (int l = 1; l <= ct.arity; ++l)
                if (nd.label_to_vertex[l - 1] >= 0)
                    jn["labels"][std::to_string(l)] = nd.label_to_vertex[l - 1];
            jn["children"] = nd.children;
            j["nodes"].push_back(jn);
        }
    }
    return j.dump();
}

DecompositionWitness decode_witness_json(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(std::string("bad JSON: ") + e.what(), 1, static_cast<int>(e.byte));
    }
    std::string kind = j.value("kind", "");
    if (kind == "td") {
        TreeDecomposition td;
        td.root = j.at("root").get<int>();
        td.parent = j.at("parent").get<std::vector<int>>();
        td.bags = j.at("bags").get<std::vector<std::vector<int>>>();
        for (auto& b : td.bags) std::sort(b.begin(), b.end());
        return td;
    }
    if (kind == "pfc") {
        auto parent = j.at("parent").get<std::vector<int>>();
        PebbleForestCover pfc{RootedForest(static_cast<int>(parent.size())),
                              j.at("pebble").get<std::vector<int>>()};
        for (std::size_t v = 0; v < parent.size(); ++v)
            pfc.forest.set_parent(static_cast<int>(v), parent[v]);
        return pfc;
    }
    if (kind == "ctree") {
        ConstructionTree ct;
        ct.arity = j.at("arity").get<int>();
        ct.root = j.at("root").get<int>();
        for (auto& jn : j.at("nodes")) {
            ConstructionTree::Node nd;
            std::string k = jn.at("kind").get<std::string>();
            nd.kind = k == "leaf"        ? ConstructionTree::Kind::Leaf
                      : k == "eliminate" ? ConstructionTree::Kind::Eliminate
                                         : ConstructionTree::Kind::Product;
            nd.elim_label = jn.value("label", 0);
            nd.vertices = jn.at("vertices").get<std::vector<int>>();
            std::sort(nd.vertices.begin(), nd.vertices.end());
            for (auto& e : jn.at("edges")) {
                int u = e[0].get<int>(), v = e[1].get<int>();
                if (u > v) std::swap(u, v);
                nd.edges.emplace_back(u, v);
            }
            std::sort(nd.edges.begin(), nd.edges.end());
            nd.label_to_vertex.assign(ct.arity, -1);
            if (jn.contains("labels"))
                for (auto& [key, val] : jn.at("labels").items())
                    nd.label_to_vertex[std::stoi(key) - 1] = val.get<int>();
            nd.children = jn.at("children").get<std::vector<int>>();
            ct.nodes.push_back(std::move(nd));
        }
        return ct;
    }
    throw ParseError("unknown witness kind '" + kind + "'", 1, 1);
}

} // namespace homind
