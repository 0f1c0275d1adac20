#include <doctest.h>

#include <set>

#include "homind/canonical.hpp"
#include "homind/decomp.hpp"
#include "homind/games.hpp"
#include "homind/hom.hpp"
#include "homind/logic.hpp"
#include "homind/quantum.hpp"

using namespace homind;

namespace {

LabelledGraph labelled_pair(bool edge) {
    Graph g(2);
    if (edge) g.add_edge(0, 1);
    LabelledGraph lg(g, 2);
    lg.set_label(1, 0);
    lg.set_label(2, 1);
    return lg;
}

} // namespace

TEST_SUITE("logic") {

    TEST_CASE("evaluation follows the label semantics") {
        CHECK(evaluate(f_edge(1, 2), labelled_pair(true)));
        CHECK(!evaluate(f_edge(1, 2), labelled_pair(false)));
        FormulaPtr three = f_count_exists(3, 1, f_eq(1, 1));
        CHECK(!evaluate(three, LabelledGraph(make_clique(2), 1)));
        CHECK(evaluate(three, LabelledGraph(make_clique(3), 1)));
        // exactly two neighbours of the middle path vertex
        FormulaPtr deg2 = f_exists_exactly(2, 1, f_edge(1, 2));
        LabelledGraph mid(make_path(3), 2);
        mid.set_label(2, 1);
        CHECK(evaluate(deg2, mid));
        LabelledGraph end(make_path(3), 2);
        end.set_label(2, 0);
        CHECK(!evaluate(deg2, end));
        CHECK_THROWS_AS(evaluate(f_edge(1, 2), LabelledGraph(make_path(3), 2)),
                        PreconditionError);
    }

    TEST_CASE("fragment measures are purely syntactic") {
        FragmentInfo atom = fragment_check(f_eq(1, 2));
        CHECK(atom.quantifier_rank == 0);
        FragmentInfo one = fragment_check(f_count_exists(2, 1, f_edge(1, 2)));
        CHECK(one.quantifier_rank == 1);
        CHECK(one.variables == std::set<int>{1, 2});
        CHECK(one.in_ckq(2, 1));
        CHECK(!one.in_ckq(2, 0));
        CHECK(!one.in_ckq(1, 1));
        // guarded recogniser
        FormulaPtr guarded = f_count_exists(2, 2, f_and(f_edge(1, 2), f_eq(2, 2)));
        CHECK(fragment_check(guarded).guarded);
        FormulaPtr bare = f_count_exists(2, 2, f_eq(2, 2));
        CHECK(!fragment_check(bare).guarded);
        // boolean combinations take the max rank
        CHECK(fragment_check(f_or(guarded, atom.quantifier_rank == 0 ? f_eq(1, 1) : guarded))
                  .quantifier_rank == 1);
    }

    TEST_CASE("text forms round trip") {
        FormulaPtr f = f_or(f_not(f_edge(1, 2)),
                            f_count_exists(2, 2, f_and(f_edge(1, 2), f_eq(2, 2))));
        std::string s = formula_to_sexpr(f);
        CHECK(formula_to_sexpr(parse_formula(s)) == s);
        std::string j = formula_to_json(f);
        CHECK(formula_to_json(parse_formula(j)) == j);
        CHECK(formula_to_sexpr(parse_formula("(geq 2 x1 (and (E x1 x2) (eq x1 x1)))")) ==
              "(geq 2 x1 (and (E x1 x2) (eq x1 x1)))");
        CHECK_THROWS_AS(parse_formula("(geq 2 y1 top)"), ParseError);
        CHECK_THROWS_AS(parse_formula("(frob x1)"), ParseError);
    }

    TEST_CASE("formula family for the labelled edge") {
        LabelledGraph e = labelled_pair(true);
        ConstructionTree ct = build_ctree_witness(e, 2);
        FormulaPtr phi1 = synth_formula(e, ct, 1, false, 4);
        FormulaPtr phi0 = synth_formula(e, ct, 0, false, 4);
        FormulaPtr phi2 = synth_formula(e, ct, 2, false, 4);
        CHECK(evaluate(phi1, labelled_pair(true)));
        CHECK(!evaluate(phi1, labelled_pair(false)));
        CHECK(!evaluate(phi0, labelled_pair(true)));
        CHECK(evaluate(phi0, labelled_pair(false)));
        CHECK(!evaluate(phi2, labelled_pair(true)));
        CHECK(!evaluate(phi2, labelled_pair(false)));
    }

    TEST_CASE("elimination formulas count degrees") {
        // the one-labelled edge: hom = degree of the labelled vertex
        Graph g(2);
        g.add_edge(0, 1);
        LabelledGraph f(g, 2);
        f.set_label(1, 0);
        ConstructionTree ct = build_ctree_witness(f, 2);
        FormulaPtr phi2 = synth_formula(f, ct, 2, false, 4);
        LabelledGraph k3(make_clique(3), 2);
        for (int v = 0; v < 3; ++v) CHECK(evaluate(phi2, with_label(k3, 1, v)));
        LabelledGraph p3(make_path(3), 2);
        CHECK(!evaluate(phi2, with_label(p3, 1, 0)));
        CHECK(evaluate(phi2, with_label(p3, 1, 1)));
        // one elimination adds exactly one quantifier level
        FormulaPtr child_phi = synth_formula(labelled_pair(true),
                                             build_ctree_witness(labelled_pair(true), 2), 1,
                                             false, 4);
        CHECK(fragment_check(phi2).quantifier_rank ==
              1 + fragment_check(child_phi).quantifier_rank);
    }

    TEST_CASE("formula family is correct across the small class") {
        for (const auto& fg : enumerate_class(4, 2, 2)) {
            LabelledGraph f(fg, 2);
            auto res = decide_membership(fg, 2, 2);
            REQUIRE(res.member);
            auto ct = std::get<ConstructionTree>(convert(fg, *res.witness, WitnessKind::Ctree));
            std::set<std::uint64_t> values;
            for (const auto& g : all_graphs_up_to(4))
                values.insert(hom_count(f, LabelledGraph(g, 2)).as_u64());
            values.insert(3); // one value that may not occur
            for (std::uint64_t m : values) {
                FormulaPtr phi = synth_formula(f, ct, m, false, 4);
                CHECK(fragment_check(phi).in_ckq(2, 2));
                for (const auto& g : all_graphs_up_to(4)) {
                    LabelledGraph lg(g, 2);
                    CHECK(evaluate(phi, lg) == (hom_count(f, lg).as_u64() == m));
                }
            }
        }
    }

    TEST_CASE("guarded synthesis keeps guards") {
        Graph g(2);
        g.add_edge(0, 1);
        LabelledGraph f(g, 2);
        f.set_label(1, 0);
        ConstructionTree ct = build_ctree_witness(f, 2, true);
        FormulaPtr phi = synth_formula(f, ct, 1, true, 4);
        CHECK(fragment_check(phi).guarded);
        LabelledGraph p3(make_path(3), 2);
        CHECK(evaluate(phi, with_label(p3, 1, 0)));
        CHECK(!evaluate(phi, with_label(p3, 1, 1))); // degree two, not one
    }

    TEST_CASE("quantum synthesis of atoms") {
        QuantumGraph diag = synth_qg(f_eq(1, 1), 3, 2, 2, false);
        REQUIRE(diag.terms().size() == 1);
        CHECK(diag.terms()[0].graph.n() == 1);
        for (const auto& g : all_graphs_up_to(3)) {
            LabelledGraph lg(g, 2);
            for (int v = 0; v < g.n(); ++v)
                CHECK(qg_eval(diag, with_label(lg, 1, v)) == Rational(1));
        }
        QuantumGraph edge = synth_qg(f_edge(1, 2), 3, 2, 2, false);
        CHECK(qg_eval(edge, labelled_pair(true)) == Rational(1));
        CHECK(qg_eval(edge, labelled_pair(false)) == Rational(0));
        CHECK(synth_qg(f_edge(1, 1), 3, 2, 2, false).is_zero());
    }

    TEST_CASE("quantum synthesis models sentences on every small graph") {
        FormulaPtr triangleish =
            f_count_exists(1, 1, f_count_exists(2, 2, f_edge(1, 2)));
        for (int n = 2; n <= 4; ++n) {
            QuantumGraph qg = synth_qg(triangleish, n, 2, 2, false);
            for (const auto& g : all_graphs(n)) {
                LabelledGraph lg(g, 2);
                Rational want(evaluate(triangleish, lg) ? 1 : 0);
                CHECK(qg_eval(qg, lg) == want);
            }
            // terms are class members
            for (const auto& t : qg.terms())
                CHECK(min_ctree_elim_depth(t.graph, 2) <= 2);
        }
        CHECK_THROWS_AS(synth_qg(f_count_exists(1, 3, f_eq(3, 3)), 3, 2, 2, false),
                        ValidationError);
    }

    TEST_CASE("distinguishing graphs certify inequivalence") {
        Graph c6 = make_cycle(6);
        Graph kk = Graph::disjoint_union(make_clique(3), make_clique(3));
        auto res = distinguishing_graph(c6, kk, 3, 3);
        REQUIRE(res.status == DistinguishResult::Status::Found);
        CHECK(!(hom_count(res.witness, c6) == hom_count(res.witness, kk)));
        CHECK(min_pfc_depth(res.witness, 3) <= 3);
        REQUIRE(res.sentence);
        CHECK(evaluate(res.sentence, LabelledGraph(c6, 3)) !=
              evaluate(res.sentence, LabelledGraph(kk, 3)));
        // equal graphs are inconclusive by equivalence
        auto eq = distinguishing_graph(c6, c6, 2, 2);
        CHECK(eq.status == DistinguishResult::Status::EquivalentByGame);
        // differing sizes fall back to the single vertex
        auto sz = distinguishing_graph(make_path(3), make_path(4), 2, 2);
        CHECK(sz.status == DistinguishResult::Status::Found);
        CHECK(sz.witness.n() == 1);
    }

    TEST_CASE("guarded pointed refinement separates degree-distinct roots") {
        Graph p3 = make_path(3);
        auto res = gc_pointed_equivalence(p3, 0, p3, 1, 2, 2);
        CHECK(!res.equivalent);
        REQUIRE(res.formula);
        LabelledGraph a(p3, 2), b(p3, 2);
        a.set_label(1, 0);
        b.set_label(1, 1);
        CHECK(evaluate(res.formula, a) != evaluate(res.formula, b));
        CHECK(fragment_check(res.formula).guarded);
        auto same = gc_pointed_equivalence(p3, 0, p3, 2, 2, 2);
        CHECK(same.equivalent);
    }
}
