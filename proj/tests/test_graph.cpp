#include <doctest.h>

#include <set>

#include "homind/canonical.hpp"
#include "homind/codec.hpp"
#include "homind/graph.hpp"
#include "homind/reference.hpp"

using namespace homind;

namespace {

// all labelled graphs on up to `max_n` vertices with the given arity and
// every label placement; small enough to enumerate outright
std::vector<LabelledGraph> small_labelled(int max_n, int arity) {
    std::vector<LabelledGraph> out;
    for (int n = 1; n <= max_n; ++n) {
        std::vector<std::pair<int, int>> slots;
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j) slots.emplace_back(i, j);
        for (std::uint64_t mask = 0; mask < (1ull << slots.size()); ++mask) {
            Graph g(n);
            for (std::size_t s = 0; s < slots.size(); ++s)
                if ((mask >> s) & 1) g.add_edge(slots[s].first, slots[s].second);
            // label placements: each label unassigned or on any vertex
            int combos = 1;
            for (int l = 0; l < arity; ++l) combos *= n + 1;
            for (int c = 0; c < combos; ++c) {
                LabelledGraph lg(g, arity);
                int rest = c;
                for (int l = 1; l <= arity; ++l) {
                    int pos = rest % (n + 1);
                    rest /= n + 1;
                    if (pos > 0) lg.set_label(l, pos - 1);
                }
                out.push_back(std::move(lg));
            }
        }
    }
    return out;
}

LabelledGraph labelled_edge(int l1, int l2) {
    Graph g(2);
    g.add_edge(0, 1);
    LabelledGraph lg(g, std::max(l1, l2));
    lg.set_label(l1, 0);
    lg.set_label(l2, 1);
    return lg;
}

} // namespace

TEST_SUITE("graph-core") {

    TEST_CASE("codec decodes the documented record") {
        LabelledGraph g = decode_graph("n=2; e=0-1; l=1:0,2:1");
        CHECK(g.n() == 2);
        CHECK(g.graph().has_edge(0, 1));
        CHECK(g.label_vertex(1) == 0);
        CHECK(g.label_vertex(2) == 1);
    }

    TEST_CASE("codec round trips a golden corpus") {
        std::vector<std::string> corpus = {
            "n=1",
            "n=2; e=0-1; l=1:0,2:1",
            "n=5; e=0-1,1-2,2-3,3-4",
            "n=4; e=0-1,0-2,0-3; l=2:0",
            "n=3; l=1:2,3:2",
        };
        for (const auto& text : corpus) {
            LabelledGraph g = decode_graph(text);
            CHECK(encode_graph(g) == text);
            CHECK(encode_graph(decode_graph(encode_graph(g))) == text);
            // JSON route is bit-exact too
            std::string j = encode_graph_json(g);
            CHECK(encode_graph_json(decode_graph(j)) == j);
        }
    }

    TEST_CASE("codec rejects loops and bad labels") {
        CHECK_THROWS_AS(decode_graph("n=1; e=0-0"), ParseError);
        CHECK_THROWS_AS(decode_graph("n=2; l=1:5"), ParseError);
        CHECK_THROWS_AS(decode_graph("n=2; e=0-7"), ParseError);
        CHECK_THROWS_AS(decode_graph("nonsense"), ParseError);
    }

    TEST_CASE("glue of two labelled edges forms a labelled path") {
        LabelledGraph a = labelled_edge(1, 2);
        Graph g(2);
        g.add_edge(0, 1);
        LabelledGraph b(g, 3);
        b.set_label(2, 0);
        b.set_label(3, 1);
        LabelledGraph glued = glue_product(a, b);
        CHECK(glued.n() == 3);
        CHECK(glued.graph().edge_count() == 2);
        CHECK(glued.label_vertex(1) >= 0);
        CHECK(glued.graph().has_edge(glued.label_vertex(1), glued.label_vertex(2)));
        CHECK(glued.graph().has_edge(glued.label_vertex(2), glued.label_vertex(3)));
        CHECK(!glued.graph().has_edge(glued.label_vertex(1), glued.label_vertex(3)));
    }

    TEST_CASE("glueing a fully labelled copy of the labelled part changes nothing") {
        Graph g(3);
        g.add_edge(0, 1);
        g.add_edge(1, 2);
        LabelledGraph f(g, 2);
        f.set_label(1, 0);
        f.set_label(2, 1);
        // the labelled subgraph: the edge 0-1 carrying labels 1, 2
        LabelledGraph sub = labelled_edge(1, 2);
        LabelledGraph glued = glue_product(f, sub);
        CHECK(canonical_form(glued) == canonical_form(f));
    }

    TEST_CASE("glue with swapped labels suppresses the parallel edge") {
        LabelledGraph a = labelled_edge(1, 2);
        LabelledGraph b = labelled_edge(2, 1); // swapped assignment
        LabelledGraph glued = glue_product(a, b);
        CHECK(glued.n() == 2);
        CHECK(glued.graph().edge_count() == 1);
    }

    TEST_CASE("glue postconditions on all small pairs") {
        auto pool = small_labelled(3, 2);
        for (std::size_t i = 0; i < pool.size(); i += 7)
            for (std::size_t j = 0; j < pool.size(); j += 11) {
                const auto& a = pool[i];
                const auto& b = pool[j];
                LabelledGraph glued = glue_product(a, b);
                // labels carried over from either side
                for (int l = 1; l <= 2; ++l)
                    CHECK(glued.label_assigned(l) ==
                          (a.label_assigned(l) || b.label_assigned(l)));
                // unlabelled parts stay disjoint
                int unlabelled_a = a.n() - a.labelled_vertex_count();
                int unlabelled_b = b.n() - b.labelled_vertex_count();
                CHECK(glued.n() >= unlabelled_a + unlabelled_b);
            }
    }

    TEST_CASE("glue is commutative and associative up to isomorphism") {
        auto pool = small_labelled(2, 2);
        for (std::size_t i = 0; i < pool.size(); ++i)
            for (std::size_t j = i; j < pool.size(); ++j) {
                CHECK(canonical_form(glue_product(pool[i], pool[j])) ==
                      canonical_form(glue_product(pool[j], pool[i])));
            }
        for (std::size_t i = 0; i < pool.size(); i += 5)
            for (std::size_t j = 0; j < pool.size(); j += 7)
                for (std::size_t l = 0; l < pool.size(); l += 9) {
                    auto left = glue_product(glue_product(pool[i], pool[j]), pool[l]);
                    auto right = glue_product(pool[i], glue_product(pool[j], pool[l]));
                    CHECK(canonical_form(left) == canonical_form(right));
                }
    }

    TEST_CASE("relabel semantics") {
        LabelledGraph e = labelled_edge(1, 2);
        LabelledGraph removed = without_label(e, 1);
        CHECK(!removed.label_assigned(1));
        CHECK(removed.label_assigned(2));
        CHECK(removed.graph().edge_count() == 1);
        // set then remove restores
        LabelledGraph back = without_label(with_label(removed, 1, 0), 1);
        CHECK(back == removed);
        // last write wins
        LabelledGraph twice = with_label(with_label(e, 1, 0), 1, 1);
        CHECK(twice.label_vertex(1) == 1);
        CHECK_THROWS_AS(with_label(e, 9, 0), ValidationError);
    }

    TEST_CASE("contract examples") {
        // middle edge of P3 -> P2
        LabelledGraph p3(make_path(3), 0);
        LabelledGraph c = contract_edge(p3, 1, 2);
        CHECK(c.n() == 2);
        CHECK(c.graph().edge_count() == 1);
        // any edge of K3 -> K2 with parallels suppressed
        LabelledGraph k3(make_clique(3), 0);
        LabelledGraph ck = contract_edge(k3, 0, 1);
        CHECK(ck.n() == 2);
        CHECK(ck.graph().edge_count() == 1);
        CHECK_THROWS_AS(contract_edge(p3, 0, 2), ValidationError);
    }

    TEST_CASE("contracting a spanning tree collapses to a point") {
        for (const auto& g : connected_graphs_up_to(6)) {
            LabelledGraph work(g, 0);
            // repeatedly contract any edge: ends at K1
            while (work.graph().edge_count() > 0) {
                auto [u, v] = work.graph().edges()[0];
                work = contract_edge(work, u, v);
            }
            CHECK(work.n() == 1);
        }
    }

    TEST_CASE("labels never duplicate after operations") {
        auto pool = small_labelled(3, 2);
        for (std::size_t i = 0; i < pool.size(); i += 13) {
            const auto& g = pool[i];
            if (g.graph().edge_count() == 0) continue;
            auto [u, v] = g.graph().edges()[0];
            LabelledGraph c = contract_edge(g, u, v);
            for (int l = 1; l <= c.arity(); ++l) {
                if (!c.label_assigned(l)) continue;
                int count = 0;
                for (int w = 0; w < c.n(); ++w)
                    if (c.label_vertex(l) == w) ++count;
                CHECK(count == 1);
            }
        }
    }

    TEST_CASE("disjoint union and components") {
        Graph two_triangles = Graph::disjoint_union(make_clique(3), make_clique(3));
        CHECK(two_triangles.n() == 6);
        CHECK(two_triangles.edge_count() == 6);
        CHECK(two_triangles.connected_components().size() == 2);
        CHECK(make_path(7).connected_components().size() == 1);
        CHECK(make_path(7).connected_components()[0].size() == 7);
    }

    TEST_CASE("components match the reference search") {
        // grid(2,5) minus the middle column splits into two 2x2 blocks
        Graph g = make_grid(2, 5);
        std::vector<int> keep;
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 5; ++j)
                if (j != 2) keep.push_back(grid_vertex(5, i, j));
        Graph cut = g.induced(keep);
        auto fast = cut.connected_components();
        auto slow = components_reference(cut);
        CHECK(fast == slow);
        CHECK(fast.size() == 2);
        CHECK(fast[0].size() == 4);
        CHECK(fast[1].size() == 4);
    }

    TEST_CASE("generators have the documented sizes") {
        Graph g = make_grid(2, 5);
        CHECK(g.n() == 10);
        CHECK(g.edge_count() == 13);
        CHECK(make_path(1).n() == 1);
        CHECK(make_path(1).edge_count() == 0);
        for (int h = 1; h <= 8; ++h)
            for (int l = 1; l <= 8; ++l) {
                Graph grid = make_grid(h, l);
                CHECK(grid.n() == h * l);
                CHECK(grid.edge_count() == h * (l - 1) + l * (h - 1));
            }
        CHECK(canonical_form(make_grid(1, 6)) == canonical_form(make_path(6)));
        CHECK_THROWS_AS(make_grid(0, 3), ValidationError);
        CHECK_THROWS_AS(make_path(0), ValidationError);
    }

    TEST_CASE("canonical forms separate isomorphism classes exactly") {
        // C4 against a vertex permutation of itself
        Graph c4 = make_cycle(4);
        Graph c4p(4);
        c4p.add_edge(2, 0);
        c4p.add_edge(0, 3);
        c4p.add_edge(3, 1);
        c4p.add_edge(1, 2);
        CHECK(canonical_form(c4) == canonical_form(c4p));
        CHECK(canonical_form(make_cycle(6)) !=
              canonical_form(Graph::disjoint_union(make_clique(3), make_clique(3))));
        // the eleven 4-vertex classes, cross-checked against permutations
        auto graphs = all_graphs(4);
        CHECK(graphs.size() == 11);
        for (std::size_t i = 0; i < graphs.size(); ++i)
            for (std::size_t j = i; j < graphs.size(); ++j) {
                bool same = canonical_form(graphs[i]) == canonical_form(graphs[j]);
                CHECK(same == isomorphic_reference(graphs[i], graphs[j]));
                CHECK(same == isomorphic(graphs[i], graphs[j]));
            }
    }

    TEST_CASE("rooted forest validation") {
        RootedForest f(3);
        f.set_parent(0, 1);
        f.set_parent(1, 2);
        CHECK_NOTHROW(f.validate());
        CHECK(f.height() == 3);
        CHECK(f.ancestor_or_equal(2, 0));
        CHECK(!f.ancestor_or_equal(0, 2));
        f.set_parent(2, 0);
        CHECK_THROWS_AS(f.validate(), ValidationError);
    }
}
