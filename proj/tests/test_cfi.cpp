#include <doctest.h>

#include <set>

#include "homind/canonical.hpp"
#include "homind/cfi.hpp"
#include "homind/games.hpp"
#include "homind/hom.hpp"
#include "homind/reference.hpp"

using namespace homind;

TEST_SUITE("cfi") {

    TEST_CASE("fiber sizes follow the degree rule") {
        auto [e4, o4] = cfi_pair(make_path(4));
        CHECK(e4.graph.n() == 6);
        CHECK(o4.graph.n() == 6);
        auto [e7, o7] = cfi_pair(make_path(7));
        CHECK(e7.graph.n() == 12);
        CHECK(o7.graph.n() == 12);
        for (const auto& base : connected_graphs_up_to(5)) {
            CfiGraph even = cfi_build(base, {});
            for (int v = 0; v < base.n(); ++v) {
                int expect = base.degree(v) == 0 ? 1 : 1 << (base.degree(v) - 1);
                CHECK(static_cast<int>(even.fiber[v].size()) == expect);
            }
            // the projection is a homomorphism onto the base
            for (auto [x, y] : even.graph.edges())
                CHECK(base.has_edge(even.fiber_base[x], even.fiber_base[y]));
        }
    }

    TEST_CASE("single-vertex corner cases") {
        CfiGraph even = cfi_build(make_clique(1), {});
        CHECK(even.graph.n() == 1);
        CfiGraph odd = cfi_build(make_clique(1), {0});
        CHECK(odd.graph.n() == 0); // no odd subset of no edges
        CHECK_THROWS_AS(cfi_pair(Graph::disjoint_union(make_clique(1), make_clique(1))),
                        ValidationError);
    }

    TEST_CASE("twist along a path is a fiber-preserving isomorphism") {
        // empty path: the identity
        Graph p4 = make_path(4);
        auto id = twist_iso(p4, 1, 1, {1});
        CfiGraph a = cfi_build(p4, {1});
        for (int x = 0; x < a.graph.n(); ++x) CHECK(id[x] == x);
        // whole path: all fibers move
        auto full = twist_iso(p4, 0, 3, {0, 1, 2, 3});
        CfiGraph from = cfi_build(p4, {0});
        CfiGraph to = cfi_build(p4, {3});
        std::set<int> image;
        for (int x = 0; x < from.graph.n(); ++x) {
            CHECK(from.fiber_base[x] == to.fiber_base[full[x]]);
            image.insert(full[x]);
        }
        CHECK(static_cast<int>(image.size()) == from.graph.n());
        // edges preserved in both directions
        for (int x = 0; x < from.graph.n(); ++x)
            for (int y = x + 1; y < from.graph.n(); ++y)
                CHECK(from.graph.has_edge(x, y) == to.graph.has_edge(full[x], full[y]));
        CHECK_THROWS_AS(twist_iso(p4, 0, 3, {0, 2, 3}), ValidationError);
    }

    TEST_CASE("twisting between star leaves fixes the third fiber") {
        Graph star(4);
        star.add_edge(0, 1);
        star.add_edge(0, 2);
        star.add_edge(0, 3);
        auto iso = twist_iso(star, 1, 2, {1, 0, 2});
        CfiGraph from = cfi_build(star, {1});
        for (int x = 0; x < from.graph.n(); ++x)
            if (from.fiber_base[x] == 3) CHECK(iso[x] == x);
    }

    TEST_CASE("parity law on the four-path") {
        Graph p4 = make_path(4);
        CfiGraph even = cfi_build(p4, {});
        CHECK(iso_check(even.graph, cfi_build(p4, {1, 2}).graph));
        CHECK(!iso_check(even.graph, cfi_build(p4, {1}).graph));
        // isomorphism is invariant under relabelling
        Graph shuffled(6);
        CfiGraph ref = cfi_build(p4, {0, 1});
        std::vector<int> perm{3, 1, 4, 0, 5, 2};
        for (auto [u, v] : ref.graph.edges()) shuffled.add_edge(perm[u], perm[v]);
        CHECK(iso_check(ref.graph, shuffled));
        CHECK(isomorphic_reference(even.graph, cfi_build(p4, {1, 2}).graph));
    }

    TEST_CASE("parity and dominance on the small bases") {
        for (const auto& base : connected_graphs_up_to(4)) {
            CfiGraph even = cfi_build(base, {});
            std::vector<std::vector<int>> twists;
            for (int u = 0; u < base.n(); ++u) twists.push_back({u});
            if (base.n() >= 2) twists.push_back({0, 1});
            for (const auto& u : twists) {
                CfiGraph tw = cfi_build(base, u);
                bool even_parity = u.size() % 2 == 0;
                CHECK(iso_check(even.graph, tw.graph) == even_parity);
                BigUint hs = hom_count(base, even.graph);
                BigUint ht = hom_count(base, tw.graph);
                CHECK((hs == ht) == even_parity);
                for (const auto& f : all_graphs_up_to(4))
                    CHECK(hom_count(f, even.graph) >= hom_count(f, tw.graph));
            }
        }
    }

    TEST_CASE("the robber win transfers to the bijective game") {
        // robber wins the (2,2) game on the four-path, so the pair is
        // (2,2)-equivalent
        Graph p4 = make_path(4);
        REQUIRE(!solve_cr(p4, 2, 2, false).cops_win);
        auto [even, odd] = cfi_pair(p4);
        CHECK(bijective_pebble_game(even.graph, odd.graph, 2, 2) == PebbleWinner::Duplicator);
        // and the (2,3) game is lost by the robber, matching spoiler's win
        REQUIRE(solve_cr(p4, 2, 3, false).cops_win);
        CHECK(bijective_pebble_game(even.graph, odd.graph, 2, 3) == PebbleWinner::Spoiler);
    }

    TEST_CASE("witness pairs and refusals") {
        auto res = witness_pair(make_path(4), 2);
        REQUIRE(std::holds_alternative<WitnessPair>(res));
        const auto& wp = std::get<WitnessPair>(res);
        CHECK(wp.clique_n == 2);
        CHECK(wp.g.n() == 8);
        CHECK(hom_count(make_path(4), wp.g) > hom_count(make_path(4), wp.h));
        auto refusal = witness_pair(make_clique(2), 2);
        REQUIRE(std::holds_alternative<WitnessRefusal>(refusal));
        const auto& wr = std::get<WitnessRefusal>(refusal);
        CHECK(verify(make_clique(2), wr.witness, 2, 2).ok);
    }
}
