#include "homind/reference.hpp"

#include <algorithm>
#include <numeric>
#include <queue>

namespace homind {

BigUint hom_count_reference(const LabelledGraph& f, const LabelledGraph& g) {
    int m = f.n(), n = g.n();
    if (m == 0) return BigUint(1);
    if (n == 0) return BigUint(0);
    std::uint64_t count = 0;
    std::vector<int> map(m, 0);
    while (true) {
        bool ok = true;
        for (auto [u, v] : f.graph().edges())
            if (!g.graph().has_edge(map[u], map[v])) {
                ok = false;
                break;
            }
        if (ok)
            for (int l = 1; l <= f.arity() && ok; ++l) {
                int vf = f.label_vertex(l);
                if (vf >= 0 && map[vf] != g.label_vertex(l)) ok = false;
            }
        if (ok) ++count;
        int i = 0;
        while (i < m && ++map[i] == n) map[i++] = 0;
        if (i == m) break;
    }
    return BigUint(count);
}

std::vector<std::vector<int>> components_reference(const Graph& g) {
    std::vector<int> comp(g.n(), -1);
    std::vector<std::vector<int>> out;
    for (int s = 0; s < g.n(); ++s) {
        if (comp[s] >= 0) continue;
        int id = static_cast<int>(out.size());
        out.emplace_back();
        std::queue<int> bfs;
        bfs.push(s);
        comp[s] = id;
        while (!bfs.empty()) {
            int v = bfs.front();
            bfs.pop();
            out[id].push_back(v);
            for (int w : g.neighbours(v))
                if (comp[w] < 0) {
                    comp[w] = id;
                    bfs.push(w);
                }
        }
        std::sort(out[id].begin(), out[id].end());
    }
    return out;
}

bool isomorphic_reference(const Graph& a, const Graph& b) {
    if (a.n() != b.n() || a.edge_count() != b.edge_count()) return false;
    std::vector<int> perm(a.n());
    std::iota(perm.begin(), perm.end(), 0);
    do {
        bool ok = true;
        for (auto [u, v] : a.edges())
            if (!b.has_edge(perm[u], perm[v])) {
                ok = false;
                break;
            }
        if (ok) return true;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return false;
}

} // namespace homind
