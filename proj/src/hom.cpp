#include "homind/hom.hpp"

#include <algorithm>
#include <map>

#include "homind/parallel.hpp"

namespace homind {

namespace {

// backtracking over one connected piece of F; candidate sets are
// intersections of target adjacency rows
struct HomSearch {
    const Graph& f;
    int gn;
    const std::vector<Bitset>& rows; // target adjacency
    std::vector<int> image;
    std::vector<int> order;
    std::vector<std::vector<int>> earlier_nbrs; // per order slot
    std::uint64_t leaves = 0;

    void count(std::size_t idx) {
        if (idx == order.size()) {
            ++leaves;
            return;
        }
        int v = order[idx];
        const auto& nbrs = earlier_nbrs[idx];
        if (nbrs.empty()) {
            for (int cand = 0; cand < gn; ++cand) {
                image[v] = cand;
                count(idx + 1);
            }
            image[v] = -1;
            return;
        }
        Bitset cand = rows[image[nbrs[0]]];
        for (std::size_t i = 1; i < nbrs.size(); ++i) cand &= rows[image[nbrs[i]]];
        for (int c = cand.first(); c >= 0;) {
            image[v] = c;
            count(idx + 1);
            cand.reset(c);
            c = cand.first();
        }
        image[v] = -1;
    }
};

BigUint hom_count_piece(const Graph& f, const std::vector<int>& forced, const Graph& g,
                        const std::vector<Bitset>& rows) {
    HomSearch s{f, g.n(), rows, forced, {}, {}, 0};
    std::vector<bool> placed(f.n(), false);
    std::vector<int> todo;
    for (int v = 0; v < f.n(); ++v) {
        placed[v] = forced[v] >= 0;
        if (!placed[v]) todo.push_back(v);
    }
    while (!todo.empty()) {
        int best = -1, best_key = -1;
        for (int v : todo) {
            int attached = 0;
            for (int w : f.neighbours(v))
                if (placed[w]) ++attached;
            int key = attached * 1000 + f.degree(v);
            if (key > best_key) { best_key = key; best = v; }
        }
        s.order.push_back(best);
        placed[best] = true;
        todo.erase(std::find(todo.begin(), todo.end(), best));
    }
    s.earlier_nbrs.resize(s.order.size());
    {
        std::vector<bool> before(f.n(), false);
        for (int v = 0; v < f.n(); ++v) before[v] = forced[v] >= 0;
        for (std::size_t i = 0; i < s.order.size(); ++i) {
            for (int w : f.neighbours(s.order[i]))
                if (before[w]) s.earlier_nbrs[i].push_back(w);
            before[s.order[i]] = true;
        }
    }
    s.count(0);
    return BigUint(s.leaves);
}

} // namespace

BigUint hom_count(const LabelledGraph& F, const LabelledGraph& G) {
    if (F.arity() > G.arity())
        throw PreconditionError("hom_count: label arity of F exceeds that of G");
    for (int l = 1; l <= F.arity(); ++l)
        if (F.label_assigned(l) && !G.label_assigned(l))
            throw PreconditionError("hom_count: label " + std::to_string(l) +
                                    " of F unassigned in G");

    std::vector<int> image(F.n(), -1);
    for (int l = 1; l <= F.arity(); ++l) {
        int vf = F.label_vertex(l);
        if (vf < 0) continue;
        int vg = G.label_vertex(l);
        if (image[vf] >= 0 && image[vf] != vg) return BigUint(0);
        image[vf] = vg;
    }
    for (auto [u, v] : F.graph().edges())
        if (image[u] >= 0 && image[v] >= 0 && !G.graph().has_edge(image[u], image[v]))
            return BigUint(0);

    std::vector<Bitset> rows(G.n(), Bitset(G.n()));
    for (auto [u, v] : G.graph().edges()) {
        rows[u].set(v);
        rows[v].set(u);
    }

    // hom is multiplicative over F's connected pieces
    BigUint total(1);
    for (const auto& comp : F.graph().connected_components()) {
        std::vector<int> old_to_new;
        Graph piece = F.graph().induced(comp, &old_to_new);
        std::vector<int> forced(piece.n(), -1);
        for (int v : comp)
            if (image[v] >= 0) forced[old_to_new[v]] = image[v];
        BigUint part = hom_count_piece(piece, forced, G.graph(), rows);
        if (part.is_zero()) return BigUint(0);
        total = total * part;
    }
    return total;
}

BigUint hom_count(const Graph& F, const Graph& G) {
    return hom_count(LabelledGraph(F, 0), LabelledGraph(G, 0));
}

namespace {

struct StructuredCounter {
    const ConstructionTree& ct;
    std::map<std::pair<int, std::vector<int>>, BigUint> memo;

    BigUint count(int t, const LabelledGraph& g) {
        const auto& nd = ct.nodes[t];
        std::vector<int> labels(g.arity());
        for (int l = 1; l <= g.arity(); ++l) labels[l - 1] = g.label_vertex(l);
        auto key = std::make_pair(t, labels);
        if (auto it = memo.find(key); it != memo.end()) return it->second;
        BigUint out;
        if (nd.children.empty()) {
            // a fully labelled pattern admits exactly one candidate map
            out = BigUint(1);
            for (int i = 1; i <= ct.arity && !out.is_zero(); ++i) {
                int vi = nd.label_to_vertex[i - 1];
                if (vi < 0) continue;
                for (int j = i + 1; j <= ct.arity; ++j) {
                    int vj = nd.label_to_vertex[j - 1];
                    if (vj < 0) continue;
                    if (vi == vj && g.label_vertex(i) != g.label_vertex(j)) out = BigUint(0);
                    std::pair<int, int> e{std::min(vi, vj), std::max(vi, vj)};
                    if (std::binary_search(nd.edges.begin(), nd.edges.end(), e) &&
                        !g.graph().has_edge(g.label_vertex(i), g.label_vertex(j)))
                        out = BigUint(0);
                    if (out.is_zero()) break;
                }
            }
        } else if (nd.kind == ConstructionTree::Kind::Product) {
            out = BigUint(1);
            for (int c : nd.children) {
                out = out * count(c, g);
                if (out.is_zero()) break;
            }
        } else {
            out = BigUint(0);
            for (int v = 0; v < g.n(); ++v)
                out += count(nd.children[0], with_label(g, nd.elim_label, v));
        }
        memo.emplace(std::move(key), out);
        return out;
    }
};

} // namespace

BigUint hom_count_structured(const LabelledGraph& F, const ConstructionTree& w,
                             const LabelledGraph& G) {
    Verdict v = verify_labelled(F, w, w.arity, kInfDepth);
    if (!v.ok) throw ValidationError("hom_count_structured: witness invalid: " + v.violation);
    for (int l = 1; l <= F.arity(); ++l)
        if (F.label_assigned(l) && !G.label_assigned(l))
            throw PreconditionError("hom_count_structured: label " + std::to_string(l) +
                                    " of F unassigned in G");
    LabelledGraph g = G;
    if (g.arity() < w.arity) g.set_arity(w.arity);
    StructuredCounter sc{w, {}};
    return sc.count(w.root, g);
}

std::vector<BigUint> hom_profile(const LabelledGraph& F, const LabelledGraph& G, int label) {
    if (label < 1 || label > F.arity())
        throw PreconditionError("hom_profile: label outside F's arity");
    LabelledGraph g = G;
    if (g.arity() < label) g.set_arity(label);
    std::vector<BigUint> out;
    out.reserve(G.n());
    for (int v = 0; v < G.n(); ++v) out.push_back(hom_count(F, with_label(g, label, v)));
    return out;
}

std::vector<BigUint> hom_count_batch_serial(const std::vector<HomPair>& pairs) {
    std::vector<BigUint> out(pairs.size());
    serial_for(static_cast<int>(pairs.size()),
               [&](int i) { out[i] = hom_count(pairs[i].from, pairs[i].to); });
    return out;
}

std::vector<BigUint> hom_count_batch(const std::vector<HomPair>& pairs) {
    std::vector<BigUint> out(pairs.size());
    parallel_for(static_cast<int>(pairs.size()),
                 [&](int i) { out[i] = hom_count(pairs[i].from, pairs[i].to); });
    return out;
}

} // namespace homind
