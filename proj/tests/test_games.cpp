#include <doctest.h>

#include <functional>
#include <numeric>
#include <set>

#include "homind/canonical.hpp"
#include "homind/games.hpp"
#include "homind/hom.hpp"
#include "homind/logic.hpp"

using namespace homind;

TEST_SUITE("games") {

    TEST_CASE("documented solver instances") {
        // robber survives the five-path iff q <= 2
        for (int q = 1; q <= 4; ++q)
            CHECK(solve_cr(make_path(5), 2, q, false).cops_win == (q > 2));
        // the 2x5 grid lower bound at three cops
        for (int q = 1; q <= 2; ++q)
            CHECK(!solve_cr(make_grid(2, 5), 3, q, false).cops_win);
        CHECK(solve_cr(make_clique(1), 1, 1, false).cops_win);
        CHECK(solve_cr(make_clique(1), 1, 1, true).cops_win);
    }

    TEST_CASE("monotone wins imply unrestricted wins") {
        for (const auto& g : connected_graphs_up_to(5))
            for (int k = 1; k <= 3; ++k)
                for (int q = 1; q <= 4; ++q) {
                    bool mono = solve_cr(g, k, q, true).cops_win;
                    bool plain = solve_cr(g, k, q, false).cops_win;
                    if (mono) CHECK(plain);
                }
    }

    TEST_CASE("winners are antitone in rounds and cops for the robber") {
        for (const auto& g : connected_graphs_up_to(5)) {
            for (int k = 1; k <= 3; ++k)
                for (int q = 1; q <= 3; ++q)
                    for (bool mono : {false, true}) {
                        bool now = solve_cr(g, k, q, mono).cops_win;
                        if (now) {
                            CHECK(solve_cr(g, k, q + 1, mono).cops_win);
                            CHECK(solve_cr(g, k + 1, q, mono).cops_win);
                        }
                    }
        }
    }

    TEST_CASE("strategy trees become certified decompositions") {
        // the monotone win on the seven-path at (2,4)
        Graph p7 = make_path(7);
        auto sol = solve_cr(p7, 2, 4, true);
        REQUIRE(sol.cops_win);
        TreeDecomposition td = strategy_to_td(p7, sol);
        CHECK(verify(p7, td, 2, 4).ok);
        Measures m = measure(DecompositionWitness(td));
        CHECK(m.width == 1);
        CHECK(m.depth <= 4);
        // K2 at (2,2)
        auto sol2 = solve_cr(make_clique(2), 2, 2, true);
        REQUIRE(sol2.cops_win);
        TreeDecomposition td2 = strategy_to_td(make_clique(2), sol2);
        CHECK(verify(make_clique(2), td2, 2, 2).ok);
        // non-monotone strategies are rejected
        auto nm = solve_cr(p7, 2, 4, false);
        CHECK_THROWS_AS(strategy_to_td(p7, nm), ValidationError);
        // every small member yields a verifying extraction
        for (const auto& g : connected_graphs_up_to(5))
            for (int k = 1; k <= 3; ++k)
                for (int q = 1; q <= 4; ++q) {
                    auto s = solve_cr(g, k, q, true);
                    if (!s.cops_win) continue;
                    TreeDecomposition w = strategy_to_td(g, s);
                    CHECK(verify(g, w, k, q).ok);
                }
    }

    TEST_CASE("grid structure facts behind the lower bound") {
        for (int h : {2, 3})
            for (int l = h + 2; l <= 6; ++l) {
                Graph grid = make_grid(h, l);
                // enumerate separators of size at most h+1
                std::vector<int> verts(grid.n());
                std::iota(verts.begin(), verts.end(), 0);
                std::vector<std::vector<int>> subsets;
                std::function<void(int, std::vector<int>&)> rec = [&](int start,
                                                                      std::vector<int>& cur) {
                    if (cur.size() <= static_cast<std::size_t>(h + 1)) subsets.push_back(cur);
                    if (cur.size() == static_cast<std::size_t>(h + 1)) return;
                    for (int v = start; v < grid.n(); ++v) {
                        cur.push_back(v);
                        rec(v + 1, cur);
                        cur.pop_back();
                    }
                };
                std::vector<int> cur;
                rec(0, cur);
                for (const auto& x : subsets) {
                    std::vector<char> removed(grid.n(), 0);
                    for (int v : x) removed[v] = 1;
                    std::vector<int> keep;
                    for (int v = 0; v < grid.n(); ++v)
                        if (!removed[v]) keep.push_back(v);
                    std::vector<int> old_to_new;
                    Graph rest = grid.induced(keep, &old_to_new);
                    auto comps = rest.connected_components();
                    // good: contains a full column
                    auto is_good = [&](const std::vector<int>& comp) {
                        std::set<int> cset;
                        for (int v : comp) cset.insert(keep[v]);
                        for (int j = 0; j < l; ++j) {
                            bool full = true;
                            for (int i = 0; i < h; ++i)
                                if (!cset.count(grid_vertex(l, i, j))) full = false;
                            if (full) return true;
                        }
                        return false;
                    };
                    int good = 0, other = 0, other_size = 0;
                    int biggest_non_good = 0;
                    for (const auto& comp : comps) {
                        if (is_good(comp)) ++good;
                        else {
                            ++other;
                            other_size = static_cast<int>(comp.size());
                            biggest_non_good =
                                std::max(biggest_non_good, static_cast<int>(comp.size()));
                        }
                    }
                    if (l > h + 1) CHECK(good >= 1);
                    if (good >= 2) {
                        CHECK(other <= 1);
                        if (other == 1) CHECK(other_size == 1);
                    }
                    if (l > h + 2) CHECK(biggest_non_good <= (h - 1) * (h + 2) / 2);
                }
            }
    }

    TEST_CASE("scripted robber survives the documented grids") {
        // three rounds against adversarial cops on the 2x6 grid
        Outcome o = simulate_adversarial_cops_vs_largest_component(make_grid(2, 6), 3, 3, false);
        CHECK(o.winner == Winner::Robber);
    }

    TEST_CASE("scripted path cops capture within the bound") {
        for (int l = 2; l <= 9; ++l) {
            int bound = (l - 1 + 1) / 2 + 1;
            auto script = make_cop_binary_split(l);
            Outcome o =
                simulate_script_vs_adversarial_robber(make_path(l), *script, 2, bound, false);
            CHECK(o.winner == Winner::Cops);
            CHECK(o.rounds <= bound);
        }
        // capture within 3 rounds on the five-path
        auto script = make_cop_binary_split(5);
        Outcome o = simulate_script_vs_adversarial_robber(make_path(5), *script, 2, 3, false);
        CHECK(o.winner == Winner::Cops);
        CHECK(o.rounds <= 3);
    }

    TEST_CASE("optimal play matches the solver verdict") {
        Outcome o = simulate_optimal(make_path(5), 2, 3, false);
        CHECK(o.winner == Winner::Cops);
        CHECK(!o.transcript.empty());
        Outcome lost = simulate_optimal(make_path(5), 2, 2, false);
        CHECK(lost.winner == Winner::Robber);
    }

    TEST_CASE("illegal scripted moves are rejected by name") {
        // a script that moves two cops at once
        struct Cheat final : CopScript {
            Mask next(const Graph&, Mask cops, Mask, int round) override {
                if (round == 1) return 0b11;
                return cops | 0b100;
            }
            std::unique_ptr<CopScript> clone() const override {
                return std::make_unique<Cheat>(*this);
            }
        };
        Cheat cheat;
        CHECK_THROWS_WITH_AS(
            simulate_script_vs_adversarial_robber(make_path(4), cheat, 2, 3, false).winner,
            doctest::Contains("k-1"), ValidationError);
        // a monotone violation: lifting the cop next to the robber
        struct Lift final : CopScript {
            Mask next(const Graph&, Mask cops, Mask, int round) override {
                if (round == 1) return 0b00010;
                if (round == 2) return 0b00110;
                return 0b00100; // lifting vertex 1 reopens the left side
            }
            std::unique_ptr<CopScript> clone() const override {
                return std::make_unique<Lift>(*this);
            }
        };
        Lift lift;
        CHECK_THROWS_WITH_AS(
            simulate_script_vs_adversarial_robber(make_path(5), lift, 2, 4, true).winner,
            doctest::Contains("monotonicity"), ValidationError);
    }

    TEST_CASE("bijective game basics") {
        for (const auto& g : all_graphs_up_to(4))
            for (int k = 1; k <= 2; ++k)
                for (int q = 0; q <= 3; ++q)
                    CHECK(bijective_pebble_game(g, g, k, q) == PebbleWinner::Duplicator);
        // size mismatch loses immediately once a round is played
        CHECK(bijective_pebble_game(make_path(3), make_path(4), 2, 1) == PebbleWinner::Spoiler);
        CHECK(bijective_pebble_game(make_path(3), make_path(4), 2, 0) == PebbleWinner::Duplicator);
        // the even cycle against two triangles
        Graph c6 = make_cycle(6);
        Graph kk = Graph::disjoint_union(make_clique(3), make_clique(3));
        for (int q = 1; q <= 4; ++q)
            CHECK(bijective_pebble_game(c6, kk, 2, q) == PebbleWinner::Duplicator);
        CHECK(bijective_pebble_game(c6, kk, 3, 3) == PebbleWinner::Spoiler);
        CHECK_THROWS_AS(bijective_pebble_game(c6, kk, 1, 1, {{0, 0}, {1, 1}}), ValidationError);
    }

    TEST_CASE("bijective game equals sentence refinement") {
        auto graphs = all_graphs_up_to(4);
        for (std::size_t i = 0; i < graphs.size(); ++i)
            for (std::size_t j = i; j < graphs.size(); ++j)
                for (int k = 1; k <= 2; ++k)
                    for (int q = 0; q <= 2; ++q) {
                        bool game = ckq_equivalent(graphs[i], graphs[j], k, q);
                        auto sep = ckq_sentence_equivalence(graphs[i], graphs[j], k, q);
                        CHECK(game == sep.equivalent);
                        if (!sep.equivalent && sep.sentence) {
                            bool a = evaluate(sep.sentence, LabelledGraph(graphs[i], k));
                            bool b = evaluate(sep.sentence, LabelledGraph(graphs[j], k));
                            CHECK(a != b);
                            CHECK(fragment_check(sep.sentence).in_ckq(k, q));
                        }
                    }
    }

    TEST_CASE("equivalence suite wraps the game") {
        Graph a = make_cycle(6);
        Graph b = Graph::disjoint_union(make_clique(3), make_clique(3));
        auto rep = equivalence_suite(a, b, 2, 2, 3);
        CHECK(rep.ckq);
        CHECK(rep.cq);
        REQUIRE(rep.gc.has_value());
        auto rep2 = equivalence_suite(a, a, 3, 3, std::nullopt);
        CHECK(rep2.ckq);
        CHECK(rep2.cq);
    }

    TEST_CASE("guarded certificate distinguishes the triangle from the path") {
        Graph k3 = make_clique(3);
        Graph p3 = make_path(3);
        auto res = gc_equivalent_bounded(k3, p3, 2, 1, 2);
        CHECK(!res.consistent);
        REQUIRE(res.witness.has_value());
        // the witness really distinguishes after dropping its label
        LabelledGraph f = *res.witness;
        BigUint ha = hom_count(without_label(f, 1), LabelledGraph(k3, f.arity()));
        BigUint hb = hom_count(without_label(f, 1), LabelledGraph(p3, f.arity()));
        CHECK(!(ha == hb));
    }
}
