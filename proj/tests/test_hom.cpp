#include <doctest.h>

#include "homind/canonical.hpp"
#include "homind/decomp.hpp"
#include "homind/hom.hpp"
#include "homind/reference.hpp"

using namespace homind;

namespace {

BigUint hom(const Graph& f, const Graph& g) {
    return hom_count(LabelledGraph(f, 0), LabelledGraph(g, 0));
}

} // namespace

TEST_SUITE("homalg") {

    TEST_CASE("unlabelled counting basics") {
        Graph k1 = make_clique(1);
        for (const auto& g : all_graphs_up_to(4))
            CHECK(hom(k1, g) == BigUint(static_cast<std::uint64_t>(g.n())));
        CHECK(hom(make_clique(2), make_cycle(5)) == BigUint(10));
        CHECK(hom(make_path(3), make_clique(3)) == BigUint(12));
    }

    TEST_CASE("label preconditions") {
        Graph e(2);
        e.add_edge(0, 1);
        LabelledGraph f(e, 2);
        f.set_label(1, 0);
        LabelledGraph g(make_clique(3), 2);
        CHECK_THROWS_AS(hom_count(f, g), PreconditionError);
        g.set_label(1, 0);
        CHECK(hom_count(f, g) == BigUint(2)); // the labelled end is pinned
    }

    TEST_CASE("two labels on one vertex force coincidence") {
        Graph one(1);
        LabelledGraph f(one, 2);
        f.set_label(1, 0);
        f.set_label(2, 0);
        LabelledGraph g(make_clique(2), 2);
        g.set_label(1, 0);
        g.set_label(2, 1);
        CHECK(hom_count(f, g).is_zero());
        g.set_label(2, 0);
        CHECK(hom_count(f, g) == BigUint(1));
    }

    TEST_CASE("profiles list degrees for a pendant labelled edge") {
        Graph e(2);
        e.add_edge(0, 1);
        LabelledGraph f(e, 1);
        f.set_label(1, 0);
        auto prof_k3 = hom_profile(f, LabelledGraph(make_clique(3), 1), 1);
        CHECK(prof_k3 == std::vector<BigUint>{BigUint(2), BigUint(2), BigUint(2)});
        auto prof_p3 = hom_profile(f, LabelledGraph(make_path(3), 1), 1);
        CHECK(prof_p3 == std::vector<BigUint>{BigUint(1), BigUint(2), BigUint(1)});
    }

    TEST_CASE("profile sums equal the label-removed count") {
        Graph s(3);
        s.add_edge(0, 1);
        s.add_edge(0, 2);
        LabelledGraph f(s, 1);
        f.set_label(1, 0);
        for (const auto& g : all_graphs(4)) {
            LabelledGraph lg(g, 1);
            auto prof = hom_profile(f, lg, 1);
            BigUint total(0);
            for (const auto& x : prof) total += x;
            CHECK(total == hom_count(without_label(f, 1), lg));
        }
    }

    TEST_CASE("counting matches plain enumeration on sampled pairs") {
        auto fs = all_graphs_up_to(4);
        auto gs = all_graphs_up_to(4);
        for (std::size_t i = 0; i < fs.size(); i += 2)
            for (std::size_t j = 0; j < gs.size(); j += 3) {
                LabelledGraph f(fs[i], 0), g(gs[j], 0);
                CHECK(hom_count(f, g) == hom_count_reference(f, g));
            }
    }

    TEST_CASE("hom is multiplicative over target-side unions for connected patterns") {
        auto pats = connected_graphs_up_to(4);
        auto gs = all_graphs_up_to(3);
        for (std::size_t i = 0; i < pats.size(); ++i)
            for (std::size_t a = 0; a < gs.size(); a += 2)
                for (std::size_t b = a; b < gs.size(); b += 3) {
                    BigUint lhs = hom(pats[i], Graph::disjoint_union(gs[a], gs[b]));
                    CHECK(lhs == hom(pats[i], gs[a]) + hom(pats[i], gs[b]));
                }
    }

    TEST_CASE("hom is multiplicative over pattern-side unions") {
        auto fs = all_graphs_up_to(3);
        auto gs = all_graphs_up_to(3);
        for (std::size_t i = 0; i < fs.size(); i += 2)
            for (std::size_t j = 0; j < fs.size(); j += 3)
                for (std::size_t t = 0; t < gs.size(); t += 2) {
                    Graph both = Graph::disjoint_union(fs[i], fs[j]);
                    CHECK(hom(both, gs[t]) == hom(fs[i], gs[t]) * hom(fs[j], gs[t]));
                }
    }

    TEST_CASE("structured counting agrees with the search") {
        for (const auto& f : enumerate_class(4, 2, 3)) {
            auto res = decide_membership(f, 2, 3);
            REQUIRE(res.member);
            auto ct = std::get<ConstructionTree>(convert(f, *res.witness, WitnessKind::Ctree));
            for (const auto& g : all_graphs_up_to(4)) {
                LabelledGraph lg(g, 2);
                CHECK(hom_count_structured(LabelledGraph(f, 2), ct, lg) ==
                      hom_count(LabelledGraph(f, 2), lg));
            }
        }
    }

    TEST_CASE("structured counting on an explicit elimination witness") {
        // a labelled edge with one end eliminated counts neighbourhoods
        Graph e(2);
        e.add_edge(0, 1);
        LabelledGraph f(e, 2);
        f.set_label(1, 0);
        auto ct = build_ctree_witness(f, 2);
        for (const auto& g : all_graphs_up_to(4)) {
            LabelledGraph lg(g, 2);
            for (int v = 0; v < g.n(); ++v) {
                LabelledGraph gv = with_label(lg, 1, v);
                CHECK(hom_count_structured(f, ct, gv) ==
                      BigUint(static_cast<std::uint64_t>(g.degree(v))));
            }
        }
    }

    TEST_CASE("big integers survive large counts") {
        // hom(10 K1, K5) = 5^10, exceeding 32-bit arithmetic
        Graph f(10);
        CHECK(hom(f, make_clique(5)) == BigUint(9765625));
        BigUint a = BigUint::from_string("123456789012345678901234567890");
        BigUint b = BigUint::from_string("987654321098765432109876543210");
        CHECK((a * b).to_string() == "121932631137021795226185032733622923332237463801111263526900");
        CHECK(a + b == BigUint::from_string("1111111110111111111011111111100"));
        CHECK(b % a == BigUint::from_string("9000000000900000000090"));
    }
}
