#include "homind/canonical.hpp"

#include <algorithm>
#include <map>
#include <numeric>

namespace homind {

namespace {

// stable colour refinement; colours are refined by sorted multisets of
// neighbour colours until stable
std::vector<int> refine(const Graph& g, std::vector<int> colour) {
    int n = g.n();
    while (true) {
        std::vector<std::pair<int, std::vector<int>>> sig(n);
        for (int v = 0; v < n; ++v) {
            std::vector<int> nb;
            nb.reserve(g.neighbours(v).size());
            for (int w : g.neighbours(v)) nb.push_back(colour[w]);
            std::sort(nb.begin(), nb.end());
            sig[v] = {colour[v], std::move(nb)};
        }
        std::map<std::pair<int, std::vector<int>>, int> order;
        for (int v = 0; v < n; ++v) order[sig[v]] = 0;
        int next = 0;
        for (auto& [k, id] : order) id = next++;
        std::vector<int> nc(n);
        for (int v = 0; v < n; ++v) nc[v] = order[sig[v]];
        if (nc == colour) return colour;
        colour = std::move(nc);
    }
}

std::string encode_by_order(const Graph& g, const std::vector<int>& pos,
                            const std::vector<int>& init_colour) {
    // pos[v] = canonical position of v
    int n = g.n();
    std::vector<int> inv(n);
    for (int v = 0; v < n; ++v) inv[pos[v]] = v;
    std::string s;
    s.reserve(n * n / 8 + n + 8);
    s += std::to_string(n);
    s += ':';
    for (int i = 0; i < n; ++i) {
        s += std::to_string(init_colour[inv[i]]);
        s += ',';
    }
    s += '|';
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) s += g.has_edge(inv[i], inv[j]) ? '1' : '0';
    return s;
}

struct CanonSearch {
    const Graph& g;
    const std::vector<int>& init_colour;
    std::string best;
    bool have_best = false;

    CanonSearch(const Graph& g, const std::vector<int>& ic) : g(g), init_colour(ic) {}

    // rows of u and v agree off {u,v}: swapping them is an automorphism, so
    // one branch suffices
    bool twins(int u, int v) const {
        for (int w = 0; w < g.n(); ++w) {
            if (w == u || w == v) continue;
            if (g.has_edge(u, w) != g.has_edge(v, w)) return false;
        }
        return true;
    }

    void run(std::vector<int> colour) {
        colour = refine(g, colour);
        int n = g.n();
        std::map<int, std::vector<int>> by;
        for (int v = 0; v < n; ++v) by[colour[v]].push_back(v);
        const std::vector<int>* target = nullptr;
        for (auto& [c, vs] : by)
            if (vs.size() > 1 && (!target || vs.size() < target->size())) target = &vs;
        if (!target) {
            std::vector<int> pos(n);
            std::vector<std::pair<int, int>> order;
            for (int v = 0; v < n; ++v) order.emplace_back(colour[v], v);
            std::sort(order.begin(), order.end());
            for (int i = 0; i < n; ++i) pos[order[i].second] = i;
            std::string enc = encode_by_order(g, pos, init_colour);
            if (!have_best || enc < best) {
                best = std::move(enc);
                have_best = true;
            }
            return;
        }
        std::vector<int> done;
        for (int v : *target) {
            bool skip = false;
            for (int u : done)
                if (twins(u, v)) { skip = true; break; }
            if (skip) continue;
            done.push_back(v);
            std::vector<int> nc = colour;
            for (int w = 0; w < n; ++w) nc[w] *= 2;
            nc[v] -= 1;
            run(std::move(nc));
        }
    }
};

std::string canonical_with_colours(const Graph& g, const std::vector<int>& init_colour) {
    if (g.n() == 0) return "0:|";
    CanonSearch cs(g, init_colour);
    cs.run(init_colour);
    return cs.best;
}

std::vector<int> labelled_init_colour(const LabelledGraph& g) {
    // one colour per distinct label set, ordered by the sorted sets; vertices
    // carrying a label are singleton classes since a label occurs once
    std::map<std::vector<int>, std::vector<int>> by;
    for (int v = 0; v < g.n(); ++v) by[g.labels_of_vertex(v)].push_back(v);
    std::vector<int> colour(g.n(), 0);
    int next = 0;
    for (auto& [ls, vs] : by) {
        for (int v : vs) colour[v] = next;
        ++next;
    }
    return colour;
}

} // namespace

std::string canonical_form(const Graph& g) {
    return canonical_with_colours(g, std::vector<int>(g.n(), 0));
}

std::string canonical_form(const LabelledGraph& g) {
    std::vector<int> ic = labelled_init_colour(g);
    std::string body = canonical_with_colours(g.graph(), ic);
    // colour classes alone do not say which label sits where, so append the
    // class of each label's vertex
    std::string lbl = "k" + std::to_string(g.arity());
    for (int l = 1; l <= g.arity(); ++l) {
        int v = g.label_vertex(l);
        lbl += '#';
        lbl += v < 0 ? std::string("-") : std::to_string(ic[v]);
    }
    return lbl + '!' + body;
}

namespace {

struct IsoSearch {
    const Graph& a;
    const Graph& b;
    std::vector<int> map_ab; // a-vertex -> b-vertex or -1
    std::vector<bool> used_b;

    bool compatible(int va, int vb) const {
        if (a.degree(va) != b.degree(vb)) return false;
        for (int w = 0; w < a.n(); ++w) {
            if (map_ab[w] < 0) continue;
            if (a.has_edge(va, w) != b.has_edge(vb, map_ab[w])) return false;
        }
        return true;
    }

    bool run(std::vector<int> ca, std::vector<int> cb) {
        ca = refine(a, std::move(ca));
        cb = refine(b, std::move(cb));
        std::map<int, int> histA, histB;
        for (int c : ca) histA[c]++;
        for (int c : cb) histB[c]++;
        if (histA != histB) return false;
        int pick = -1;
        for (int v = 0; v < a.n(); ++v)
            if (map_ab[v] < 0 && (pick < 0 || ca[v] < ca[pick])) pick = v;
        if (pick < 0) return true;
        for (int w = 0; w < b.n(); ++w) {
            if (cb[w] != ca[pick] || used_b[w] || !compatible(pick, w)) continue;
            map_ab[pick] = w;
            used_b[w] = true;
            std::vector<int> ca2 = ca, cb2 = cb;
            for (auto& c : ca2) c *= 2;
            for (auto& c : cb2) c *= 2;
            ca2[pick] -= 1;
            cb2[w] -= 1;
            if (run(std::move(ca2), std::move(cb2))) return true;
            map_ab[pick] = -1;
            used_b[w] = false;
        }
        return false;
    }
};

} // namespace

bool isomorphic(const Graph& a, const Graph& b) {
    if (a.n() != b.n() || a.edge_count() != b.edge_count()) return false;
    if (a.n() == 0) return true;
    IsoSearch s{a, b, std::vector<int>(a.n(), -1), std::vector<bool>(b.n(), false)};
    return s.run(std::vector<int>(a.n(), 0), std::vector<int>(b.n(), 0));
}

std::vector<Graph> all_graphs(int n) {
    if (n < 0) throw ValidationError("all_graphs: negative n");
    if (n > limits().enumerate_max_n)
        throw CapabilityError("graph enumeration capped at n = " +
                              std::to_string(limits().enumerate_max_n));
    std::vector<std::pair<int, int>> slots;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) slots.emplace_back(i, j);
    std::vector<Graph> out;
    std::map<std::string, bool> seen;
    for (std::uint64_t mask = 0; mask < (1ull << slots.size()); ++mask) {
        Graph g(n);
        for (std::size_t s = 0; s < slots.size(); ++s)
            if ((mask >> s) & 1) g.add_edge(slots[s].first, slots[s].second);
        std::string key = canonical_form(g);
        if (seen.emplace(std::move(key), true).second) out.push_back(std::move(g));
    }
    return out;
}

std::vector<Graph> all_graphs_up_to(int n) {
    std::vector<Graph> out;
    for (int i = 1; i <= n; ++i) {
        auto gs = all_graphs(i);
        out.insert(out.end(), gs.begin(), gs.end());
    }
    return out;
}

std::vector<Graph> connected_graphs(int n) {
    std::vector<Graph> out;
    for (auto& g : all_graphs(n))
        if (g.connected_components().size() <= 1) out.push_back(std::move(g));
    return out;
}

std::vector<Graph> connected_graphs_up_to(int n) {
    std::vector<Graph> out;
    for (int i = 1; i <= n; ++i) {
        auto gs = connected_graphs(i);
        out.insert(out.end(), gs.begin(), gs.end());
    }
    return out;
}

} // namespace homind
