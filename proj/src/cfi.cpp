#include "homind/cfi.hpp"

#include <algorithm>
#include <bit>
#include <map>

#include "homind/canonical.hpp"
#include "homind/hom.hpp"

namespace homind {

namespace {

std::vector<std::vector<int>> incident_edges(const Graph& g) {
    std::vector<std::vector<int>> out(g.n());
    for (int e = 0; e < g.edge_count(); ++e) {
        auto [u, v] = g.edges()[e];
        out[u].push_back(e);
        out[v].push_back(e);
    }
    return out;
}

} // namespace

int CfiGraph::vertex_of(int base_vertex, const std::vector<int>& s) const {
    for (int x : fiber[base_vertex])
        if (subset[x] == s) return x;
    return -1;
}

CfiGraph cfi_build(const Graph& g, const std::vector<int>& twist_set) {
    for (int v : twist_set)
        if (v < 0 || v >= g.n()) throw ValidationError("twist vertex out of range");
    CfiGraph out;
    out.base = g;
    out.twist_set = twist_set;
    std::sort(out.twist_set.begin(), out.twist_set.end());
    auto inc = incident_edges(g);
    std::vector<char> odd(g.n(), 0);
    for (int v : out.twist_set) odd[v] ^= 1;

    out.fiber.resize(g.n());
    // vertices (v, S), S an incident edge subset of parity delta_{v,U};
    // enumerated as bitmasks in increasing order for determinism
    for (int v = 0; v < g.n(); ++v) {
        int d = static_cast<int>(inc[v].size());
        for (std::uint64_t mask = 0; mask < (1ull << d); ++mask) {
            if ((std::popcount(mask) & 1) != odd[v]) continue;
            std::vector<int> s;
            for (int i = 0; i < d; ++i)
                if ((mask >> i) & 1) s.push_back(inc[v][i]);
            std::sort(s.begin(), s.end());
            out.fiber_base.push_back(v);
            out.subset.push_back(std::move(s));
            out.fiber[v].push_back(static_cast<int>(out.fiber_base.size()) - 1);
        }
    }
    Graph cg(static_cast<int>(out.fiber_base.size()));
    for (int e = 0; e < g.edge_count(); ++e) {
        auto [u, v] = g.edges()[e];
        for (int x : out.fiber[u])
            for (int y : out.fiber[v]) {
                bool in_x = std::binary_search(out.subset[x].begin(), out.subset[x].end(), e);
                bool in_y = std::binary_search(out.subset[y].begin(), out.subset[y].end(), e);
                if (in_x == in_y) cg.add_edge(x, y); // e not in the symmetric difference
            }
    }
    out.graph = std::move(cg);
    return out;
}

std::pair<CfiGraph, CfiGraph> cfi_pair(const Graph& g) {
    if (g.n() == 0 || g.connected_components().size() != 1)
        throw ValidationError("cfi_pair expects a connected base graph");
    return {cfi_build(g, {}), cfi_build(g, {0})};
}

std::vector<int> twist_iso(const Graph& g, int u, int v, const std::vector<int>& path) {
    // validate the path
    if (path.empty() || path.front() != u || path.back() != v)
        throw ValidationError("twist path must run from u to v");
    for (std::size_t i = 0; i + 1 < path.size(); ++i)
        if (!g.has_edge(path[i], path[i + 1]))
            throw ValidationError("twist path uses a non-edge");
    {
        std::vector<int> sorted = path;
        std::sort(sorted.begin(), sorted.end());
        if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
            throw ValidationError("twist path repeats a vertex");
    }
    CfiGraph a = cfi_build(g, {u});
    CfiGraph b = cfi_build(g, {v});
    // edge ids along the path
    auto edge_id = [&](int x, int y) {
        if (x > y) std::swap(x, y);
        for (int e = 0; e < g.edge_count(); ++e)
            if (g.edges()[e] == std::make_pair(x, y)) return e;
        throw ValidationError("edge lookup failed");
    };
    std::vector<int> on_path(g.n(), 0);
    for (int w : path) on_path[w] = 1;
    std::vector<int> out(a.graph.n(), -1);
    for (int x = 0; x < a.graph.n(); ++x) {
        int w = a.fiber_base[x];
        std::vector<int> s = a.subset[x];
        if (on_path[w]) {
            // toggle the path edges incident to w
            std::vector<int> toggles;
            for (std::size_t i = 0; i < path.size(); ++i) {
                if (path[i] != w) continue;
                if (i > 0) toggles.push_back(edge_id(path[i - 1], path[i]));
                if (i + 1 < path.size()) toggles.push_back(edge_id(path[i], path[i + 1]));
            }
            for (int e : toggles) {
                auto it = std::lower_bound(s.begin(), s.end(), e);
                if (it != s.end() && *it == e) s.erase(it);
                else s.insert(it, e);
            }
        }
        int y = b.vertex_of(w, s);
        if (y < 0) throw ValidationError("twist image missing (parity broken)");
        out[x] = y;
    }
    return out;
}

bool iso_check(const Graph& a, const Graph& b) {
    if (a.n() > limits().iso_max_n || b.n() > limits().iso_max_n)
        throw CapabilityError("iso_check capped at n = " + std::to_string(limits().iso_max_n));
    return isomorphic(a, b);
}

std::variant<WitnessPair, WitnessRefusal> witness_pair(const Graph& f, int q) {
    auto membership = decide_membership(f, std::nullopt, q);
    if (membership.member) {
        // hand back a depth-q certificate for the refusal
        return WitnessRefusal{convert(f, *membership.witness, WitnessKind::Td)};
    }
    // first connected component outside the class
    Graph core;
    bool found = false;
    for (const auto& comp : f.connected_components()) {
        Graph cand = f.induced(comp);
        if (!decide_membership(cand, std::nullopt, q).member) {
            core = std::move(cand);
            found = true;
            break;
        }
    }
    if (!found) throw ValidationError("no component escapes the class (unexpected)");
    // smallest clique with hom(f, K_n) > 0
    int n = 1;
    while (hom_count(f, make_clique(n)).is_zero()) ++n;
    auto [even, odd] = cfi_pair(core);
    WitnessPair out;
    out.core = core;
    out.clique_n = n;
    out.g = Graph::disjoint_union(even.graph, make_clique(n));
    out.h = Graph::disjoint_union(odd.graph, make_clique(n));
    return out;
}

} // namespace homind
