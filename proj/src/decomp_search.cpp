#include <algorithm>
#include <map>
#include <set>
#include <unordered_map>

#include "homind/canonical.hpp"
#include "homind/decomp.hpp"
#include "homind/games.hpp"

namespace homind {

namespace {

// ---- minimal pebble forest cover height ----
//
// A connected remainder C always has a unique <=-minimal vertex x, placed
// directly below the deepest boundary vertex that still has a neighbour in
// C. The boundary carries (vertex, pebble, depth); a fresh vertex must avoid
// every boundary pebble (a clash would shadow a pending edge), and taking
// the smallest free pebble is lossless by renaming.

struct PfcPlacement {
    int vertex;
    int parent;
    int pebble;
};

struct PfcSearcher {
    const Graph& g;
    int k;
    std::map<std::string, int> memo;

    std::string key(const Bitset& c, const std::vector<std::tuple<int, int, int>>& b) const {
        std::string s;
        for (int v : c.to_vector()) {
            s += std::to_string(v);
            s += ',';
        }
        s += '/';
        for (auto [v, p, d] : b) {
            s += std::to_string(v) + ":" + std::to_string(p) + ":" + std::to_string(d) + ";";
        }
        return s;
    }

    // minimal max depth over C's subtrees; boundary entries are
    // (vertex, pebble, depth) sorted by vertex
    int solve(const Bitset& c, const std::vector<std::tuple<int, int, int>>& b,
              std::vector<PfcPlacement>* plan) {
        if (!c.any()) return 0;
        std::string mk;
        if (!plan) {
            mk = key(c, b);
            auto it = memo.find(mk);
            if (it != memo.end()) return it->second;
        }
        std::set<int> used;
        int attach_depth = 0, attach_vertex = -1;
        for (auto [v, p, d] : b) {
            used.insert(p);
            if (d > attach_depth) {
                attach_depth = d;
                attach_vertex = v;
            }
        }
        int pebble = 1;
        while (used.count(pebble)) ++pebble;
        int best = kInfDepth;
        std::vector<PfcPlacement> best_plan;
        if (pebble <= k) {
            int dx = attach_depth + 1;
            for (int x = 0; x < g.n(); ++x) {
                if (!c.test(x)) continue;
                Bitset rest = c;
                rest.reset(x);
                // boundary for the children: drop settled vertices, add x
                std::vector<std::tuple<int, int, int>> nb;
                for (auto [v, p, d] : b) {
                    bool pending = false;
                    for (int w : g.neighbours(v))
                        if (rest.test(w)) pending = true;
                    if (pending) nb.emplace_back(v, p, d);
                }
                {
                    bool pending = false;
                    for (int w : g.neighbours(x))
                        if (rest.test(w)) pending = true;
                    if (pending) nb.emplace_back(x, pebble, dx);
                }
                std::sort(nb.begin(), nb.end());
                // split rest into components
                int val = dx;
                std::vector<PfcPlacement> plan_here;
                plan_here.push_back({x, attach_vertex, pebble});
                std::vector<int> comp(g.n(), -1);
                std::vector<Bitset> comps;
                for (int s = 0; s < g.n(); ++s) {
                    if (!rest.test(s) || comp[s] >= 0) continue;
                    int id = static_cast<int>(comps.size());
                    comps.emplace_back(g.n());
                    std::vector<int> stack{s};
                    comp[s] = id;
                    while (!stack.empty()) {
                        int v = stack.back();
                        stack.pop_back();
                        comps[id].set(v);
                        for (int w : g.neighbours(v))
                            if (rest.test(w) && comp[w] < 0) {
                                comp[w] = id;
                                stack.push_back(w);
                            }
                    }
                }
                bool dead = false;
                for (auto& d : comps) {
                    std::vector<std::tuple<int, int, int>> bd;
                    for (auto [v, p, dep] : nb) {
                        bool pend = false;
                        for (int w : g.neighbours(v))
                            if (d.test(w)) pend = true;
                        if (pend) bd.emplace_back(v, p, dep);
                    }
                    std::vector<PfcPlacement> sub_plan;
                    int sub = solve(d, bd, plan ? &sub_plan : nullptr);
                    if (sub >= kInfDepth) {
                        dead = true;
                        break;
                    }
                    val = std::max(val, sub);
                    if (plan)
                        plan_here.insert(plan_here.end(), sub_plan.begin(), sub_plan.end());
                }
                if (!dead && val < best) {
                    best = val;
                    if (plan) best_plan = std::move(plan_here);
                }
            }
        }
        if (plan)
            *plan = std::move(best_plan);
        else
            memo.emplace(std::move(mk), best);
        return best;
    }
};

} // namespace

int min_pfc_depth(const Graph& g, int k, PebbleForestCover* witness) {
    if (g.n() > limits().exhaustive_search_max_n)
        throw CapabilityError("pebble forest search capped at n = " +
                              std::to_string(limits().exhaustive_search_max_n));
    if (k < 1) return g.n() == 0 ? 0 : kInfDepth;
    if (witness) {
        witness->forest = RootedForest(g.n());
        witness->pebble.assign(g.n(), 1);
    }
    int overall = 0;
    PfcSearcher s{g, k, {}};
    for (const auto& comp : g.connected_components()) {
        Bitset c(g.n());
        for (int v : comp) c.set(v);
        std::vector<PfcPlacement> plan;
        int h = s.solve(c, {}, witness ? &plan : nullptr);
        if (h >= kInfDepth) return kInfDepth;
        overall = std::max(overall, h);
        if (witness)
            for (const auto& pl : plan) {
                witness->forest.set_parent(pl.vertex, pl.parent);
                witness->pebble[pl.vertex] = pl.pebble;
            }
    }
    return overall;
}

namespace {

// ---- minimal construction tree elimination depth ----
//
// Standard recursion: a fully labelled graph is a leaf; each free component
// becomes a factor together with only its adjacent labelled vertices (a
// fully labelled leaf factor supplies everything else), since products are
// free while carried labels are scarce; a single full component spends one
// elimination on a fresh label somewhere in it. Unused label names are
// interchangeable, so only the smallest is tried. States are memoised up to
// labelled isomorphism.

std::vector<std::vector<int>> free_components(const LabelledGraph& h) {
    std::vector<int> comp(h.n(), -1);
    std::vector<std::vector<int>> comps;
    for (int s = 0; s < h.n(); ++s) {
        if (h.vertex_labelled(s) || comp[s] >= 0) continue;
        int id = static_cast<int>(comps.size());
        comps.emplace_back();
        std::vector<int> stack{s};
        comp[s] = id;
        while (!stack.empty()) {
            int v = stack.back();
            stack.pop_back();
            comps[id].push_back(v);
            for (int w : h.graph().neighbours(v))
                if (!h.vertex_labelled(w) && comp[w] < 0) {
                    comp[w] = id;
                    stack.push_back(w);
                }
        }
    }
    return comps;
}

// the component plus the labelled vertices adjacent to it, labels restricted
LabelledGraph component_factor(const LabelledGraph& h, const std::vector<int>& comp,
                               std::vector<int>* verts_out = nullptr) {
    std::vector<char> take(h.n(), 0);
    for (int v : comp) take[v] = 1;
    for (int v : comp)
        for (int w : h.graph().neighbours(v))
            if (h.vertex_labelled(w)) take[w] = 1;
    std::vector<int> verts;
    for (int v = 0; v < h.n(); ++v)
        if (take[v]) verts.push_back(v);
    std::vector<int> old_to_new;
    Graph fg = h.graph().induced(verts, &old_to_new);
    LabelledGraph factor(fg, h.arity());
    for (int l = 1; l <= h.arity(); ++l) {
        int v = h.label_vertex(l);
        if (v >= 0 && take[v]) factor.set_label(l, old_to_new[v]);
    }
    if (verts_out) *verts_out = std::move(verts);
    return factor;
}

struct CtreeSearcher {
    int k;
    bool guarded;
    std::unordered_map<std::string, int> memo;

    int solve(const LabelledGraph& h) {
        bool any_unlabelled = false;
        for (int v = 0; v < h.n(); ++v)
            if (!h.vertex_labelled(v)) any_unlabelled = true;
        if (!any_unlabelled) return 0;
        std::string key = canonical_form(h);
        if (auto it = memo.find(key); it != memo.end()) return it->second;
        memo[key] = kInfDepth;
        auto comps = free_components(h);
        bool shed = false;
        {
            std::vector<int> verts;
            component_factor(h, comps[0], &verts);
            shed = static_cast<int>(verts.size()) < h.n();
        }
        int result;
        if (comps.size() > 1 || shed) {
            int worst = 0;
            for (auto& cvs : comps) {
                worst = std::max(worst, solve(component_factor(h, cvs)));
                if (worst >= kInfDepth) break;
            }
            result = worst;
        } else {
            int free_label = 0;
            for (int l = 1; l <= k; ++l)
                if (l > h.arity() || !h.label_assigned(l)) {
                    free_label = l;
                    break;
                }
            if (free_label == 0) {
                result = kInfDepth;
            } else {
                int best = kInfDepth;
                for (int v : comps[0]) {
                    if (guarded) {
                        bool ok = false;
                        for (int w : h.graph().neighbours(v))
                            if (h.vertex_labelled(w)) ok = true;
                        if (!ok) continue;
                    }
                    LabelledGraph child = h;
                    if (child.arity() < free_label) child.set_arity(free_label);
                    child.set_label(free_label, v);
                    int sub = solve(child);
                    if (sub < kInfDepth) best = std::min(best, 1 + sub);
                }
                result = best;
            }
        }
        memo[key] = result;
        return result;
    }
};

// reconstruct an explicit construction tree following the searcher's optimum
struct CtreeBuilder2 {
    CtreeSearcher& s;
    ConstructionTree ct;

    // h uses original G vertex ids through `ids`; returns node index
    int build(const LabelledGraph& h, const std::vector<int>& ids) {
        ConstructionTree::Node nd;
        nd.vertices = ids;
        std::sort(nd.vertices.begin(), nd.vertices.end());
        for (auto [u, v] : h.graph().edges()) {
            int a = ids[u], b = ids[v];
            if (a > b) std::swap(a, b);
            nd.edges.emplace_back(a, b);
        }
        std::sort(nd.edges.begin(), nd.edges.end());
        nd.label_to_vertex.assign(ct.arity, -1);
        for (int l = 1; l <= h.arity(); ++l)
            if (h.label_assigned(l)) nd.label_to_vertex[l - 1] = ids[h.label_vertex(l)];

        bool any_unlabelled = false;
        for (int v = 0; v < h.n(); ++v)
            if (!h.vertex_labelled(v)) any_unlabelled = true;
        if (!any_unlabelled) {
            nd.kind = ConstructionTree::Kind::Leaf;
            ct.nodes.push_back(std::move(nd));
            return static_cast<int>(ct.nodes.size()) - 1;
        }
        auto comps = free_components(h);
        bool shed = false;
        {
            std::vector<int> verts;
            component_factor(h, comps[0], &verts);
            shed = static_cast<int>(verts.size()) < h.n();
        }
        if (comps.size() > 1 || shed) {
            nd.kind = ConstructionTree::Kind::Product;
            std::vector<int> children;
            for (auto& cvs : comps) {
                std::vector<int> verts;
                LabelledGraph factor = component_factor(h, cvs, &verts);
                std::vector<int> fids(verts.size());
                for (std::size_t i = 0; i < verts.size(); ++i) fids[i] = ids[verts[i]];
                children.push_back(build(factor, fids));
            }
            // a fully labelled leaf supplies the labelled vertices and the
            // edges between them
            {
                ConstructionTree::Node leaf;
                leaf.kind = ConstructionTree::Kind::Leaf;
                leaf.label_to_vertex.assign(ct.arity, -1);
                std::vector<int> lab;
                for (int v = 0; v < h.n(); ++v)
                    if (h.vertex_labelled(v)) lab.push_back(v);
                for (int v : lab) leaf.vertices.push_back(ids[v]);
                std::sort(leaf.vertices.begin(), leaf.vertices.end());
                for (auto [u, v] : h.graph().edges())
                    if (h.vertex_labelled(u) && h.vertex_labelled(v)) {
                        int a = ids[u], b = ids[v];
                        if (a > b) std::swap(a, b);
                        leaf.edges.emplace_back(a, b);
                    }
                std::sort(leaf.edges.begin(), leaf.edges.end());
                for (int l = 1; l <= h.arity(); ++l)
                    if (h.label_assigned(l))
                        leaf.label_to_vertex[l - 1] = ids[h.label_vertex(l)];
                ct.nodes.push_back(std::move(leaf));
                children.push_back(static_cast<int>(ct.nodes.size()) - 1);
            }
            nd.children = std::move(children);
            ct.nodes.push_back(std::move(nd));
            return static_cast<int>(ct.nodes.size()) - 1;
        }
        // elimination: replay the best choice
        int target = s.solve(h);
        int free_label = 0;
        for (int l = 1; l <= s.k; ++l)
            if (l > h.arity() || !h.label_assigned(l)) {
                free_label = l;
                break;
            }
        for (int v : comps[0]) {
            if (s.guarded) {
                bool ok = false;
                for (int w : h.graph().neighbours(v))
                    if (h.vertex_labelled(w)) ok = true;
                if (!ok) continue;
            }
            LabelledGraph child = h;
            if (child.arity() < free_label) child.set_arity(free_label);
            child.set_label(free_label, v);
            if (1 + s.solve(child) == target) {
                nd.kind = ConstructionTree::Kind::Eliminate;
                nd.elim_label = free_label;
                nd.children = {build(child, ids)};
                ct.nodes.push_back(std::move(nd));
                return static_cast<int>(ct.nodes.size()) - 1;
            }
        }
        throw ValidationError("construction tree replay failed");
    }
};

} // namespace

int min_ctree_elim_depth(const LabelledGraph& f, int k, bool guarded) {
    if (f.arity() > k) throw ValidationError("graph arity exceeds k");
    LabelledGraph start = f;
    if (start.arity() < k) start.set_arity(k);
    // elimination depth is a maximum over the factors of the first split, so
    // the size cap applies per piece rather than to the whole union
    auto comps = free_components(start);
    if (comps.size() > 1 || (!comps.empty() && [&] {
            std::vector<int> verts;
            component_factor(start, comps[0], &verts);
            return static_cast<int>(verts.size()) < start.n();
        }())) {
        int worst = 0;
        CtreeSearcher s{k, guarded, {}};
        for (auto& cvs : comps) {
            LabelledGraph factor = component_factor(start, cvs);
            if (factor.n() > limits().exhaustive_search_max_n)
                throw CapabilityError("construction tree search capped at n = " +
                                      std::to_string(limits().exhaustive_search_max_n));
            worst = std::max(worst, s.solve(factor));
            if (worst >= kInfDepth) break;
        }
        return worst;
    }
    if (start.n() > limits().exhaustive_search_max_n)
        throw CapabilityError("construction tree search capped at n = " +
                              std::to_string(limits().exhaustive_search_max_n));
    CtreeSearcher s{k, guarded, {}};
    return s.solve(start);
}

ConstructionTree build_ctree_witness(const LabelledGraph& f, int k, bool guarded) {
    if (f.arity() > k) throw ValidationError("graph arity exceeds k");
    CtreeSearcher s{k, guarded, {}};
    LabelledGraph start = f;
    if (start.arity() < k) start.set_arity(k);
    if (s.solve(start) >= kInfDepth)
        throw ValidationError("no construction tree exists at this arity");
    CtreeBuilder2 b{s, {}};
    b.ct.arity = k;
    std::vector<int> ids(start.n());
    for (int v = 0; v < start.n(); ++v) ids[v] = v;
    b.ct.root = b.build(start, ids);
    return b.ct;
}

// ---- direct search over width/depth bounded tree decompositions ----

namespace {

struct TdSearcher {
    const Graph& g;
    int k, q;
    std::map<std::tuple<std::vector<int>, std::vector<int>, int>, bool> memo;

    bool solve(const std::vector<int>& bag, const Bitset& rest, int used) {
        if (!rest.any()) return true;
        auto key = std::make_tuple(bag, rest.to_vector(), used);
        if (auto it = memo.find(key); it != memo.end()) return it->second;
        bool ok = true;
        // components of the rest
        std::vector<int> comp(g.n(), -1);
        std::vector<std::vector<int>> comps;
        for (int s = 0; s < g.n(); ++s) {
            if (!rest.test(s) || comp[s] >= 0) continue;
            int id = static_cast<int>(comps.size());
            comps.emplace_back();
            std::vector<int> stack{s};
            comp[s] = id;
            while (!stack.empty()) {
                int v = stack.back();
                stack.pop_back();
                comps[id].push_back(v);
                for (int w : g.neighbours(v))
                    if (rest.test(w) && comp[w] < 0) {
                        comp[w] = id;
                        stack.push_back(w);
                    }
            }
        }
        for (auto& d : comps) {
            // forget bag vertices without neighbours in this component
            std::vector<int> bd;
            for (int b : bag) {
                bool pending = false;
                for (int w : g.neighbours(b))
                    if (std::find(d.begin(), d.end(), w) != d.end()) pending = true;
                if (pending) bd.push_back(b);
            }
            if (static_cast<int>(bd.size()) >= k || used + 1 > q) {
                ok = false;
                break;
            }
            bool comp_ok = false;
            Bitset dset(g.n());
            for (int v : d) dset.set(v);
            for (int v : d) {
                std::vector<int> nb = bd;
                nb.insert(std::lower_bound(nb.begin(), nb.end(), v), v);
                Bitset nrest = dset;
                nrest.reset(v);
                if (solve(nb, nrest, used + 1)) {
                    comp_ok = true;
                    break;
                }
            }
            if (!comp_ok) {
                ok = false;
                break;
            }
        }
        memo[key] = ok;
        return ok;
    }
};

} // namespace

bool td_search(const Graph& g, int k, int q) {
    if (g.n() > limits().exhaustive_search_max_n)
        throw CapabilityError("tree decomposition search capped at n = " +
                              std::to_string(limits().exhaustive_search_max_n));
    if (k < 1 || q < 0) return g.n() == 0;
    Bitset all(g.n());
    for (int v = 0; v < g.n(); ++v) all.set(v);
    TdSearcher s{g, k, q, {}};
    return s.solve({}, all, 0);
}

MembershipResult decide_membership(const Graph& g, std::optional<int> k_opt,
                                   std::optional<int> q_opt, MembershipMethod method) {
    if (!k_opt && !q_opt) return {true, std::nullopt}; // no bound at all
    int n = g.n();
    // unbounded q: any width-(k-1) decomposition has depth <= n;
    // unbounded k: q pebbles always suffice for depth q
    int q = q_opt.value_or(std::max(n, 1));
    int k = k_opt.value_or(q);
    if (k < 1 || q < 0) return {false, std::nullopt};
    if (n == 0) return {true, DecompositionWitness(PebbleForestCover{RootedForest(0), {}})};

    if (method == MembershipMethod::Game) {
        auto sol = solve_cr(g, k, q, true);
        if (!sol.cops_win) return {false, std::nullopt};
        TreeDecomposition td = strategy_to_td(g, sol);
        return {true, DecompositionWitness(std::move(td))};
    }
    PebbleForestCover pfc;
    int depth = min_pfc_depth(g, std::min(k, std::max(n, 1)), &pfc);
    if (depth > q) return {false, std::nullopt};
    return {true, DecompositionWitness(std::move(pfc))};
}

std::vector<Graph> enumerate_class(int n, int k, int q, bool guarded) {
    if (n > limits().enumerate_max_n)
        throw CapabilityError("class enumeration capped at n = " +
                              std::to_string(limits().enumerate_max_n));
    std::vector<Graph> out;
    for (int m = 1; m <= n; ++m) {
        for (auto& g : all_graphs(m)) {
            if (!guarded) {
                if (min_pfc_depth(g, std::min(k, m), nullptr) <= q) out.push_back(g);
                continue;
            }
            // guarded class: some labelled version must be constructible;
            // extra labels only help, so try the maximal placements
            bool member = false;
            int t = std::min(k, m);
            std::vector<std::vector<int>> placements;
            {
                // all injective placements of labels 1..j for j <= t on
                // distinct vertices, plus stacked variants via j = 1 on each
                std::vector<int> cur;
                auto rec = [&](auto&& self, int next_label) -> void {
                    if (next_label > 1) placements.push_back(cur);
                    if (next_label > t) return;
                    for (int v = 0; v < m; ++v) {
                        cur.push_back(v);
                        self(self, next_label + 1);
                        cur.pop_back();
                    }
                };
                rec(rec, 1);
            }
            for (auto& pl : placements) {
                LabelledGraph lg(g, k);
                for (std::size_t i = 0; i < pl.size(); ++i)
                    lg.set_label(static_cast<int>(i) + 1, pl[i]);
                if (min_ctree_elim_depth(lg, k, true) <= q) {
                    member = true;
                    break;
                }
            }
            if (member) out.push_back(g);
        }
    }
    return out;
}

std::vector<LabelledGraph> enumerate_guarded_one_labelled(int max_n, int k, int q) {
    std::vector<LabelledGraph> out;
    std::set<std::string> seen;
    for (int m = 1; m <= max_n; ++m)
        for (auto& g : all_graphs(m))
            for (int v = 0; v < m; ++v) {
                LabelledGraph lg(g, k);
                lg.set_label(1, v);
                std::string key = canonical_form(lg);
                if (seen.count(key)) continue;
                seen.insert(key);
                if (min_ctree_elim_depth(lg, k, true) <= q) out.push_back(lg);
            }
    return out;
}

} // namespace homind
