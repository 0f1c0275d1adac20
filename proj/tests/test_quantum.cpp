#include <doctest.h>

#include <set>

#include "homind/canonical.hpp"
#include "homind/hom.hpp"
#include "homind/quantum.hpp"

using namespace homind;

namespace {

LabelledGraph lone_edge(int arity, int l1, int l2) {
    Graph g(2);
    g.add_edge(0, 1);
    LabelledGraph lg(g, arity);
    lg.set_label(l1, 0);
    lg.set_label(l2, 1);
    return lg;
}

QuantumGraph single(const LabelledGraph& g) { return QuantumGraph(Rational(1), g); }

} // namespace

TEST_SUITE("quantum") {

    TEST_CASE("the empty combination annihilates products") {
        QuantumGraph zero(2);
        QuantumGraph a = single(lone_edge(2, 1, 2));
        CHECK(qg_product(a, zero).is_zero());
        CHECK(qg_product(zero, a).is_zero());
        for (const auto& g : all_graphs_up_to(3))
            CHECK(qg_eval(zero, LabelledGraph(g, 2)).is_zero());
    }

    TEST_CASE("products of single terms glue") {
        Graph one(1);
        LabelledGraph va(one, 2);
        va.set_label(1, 0);
        LabelledGraph vb(one, 2);
        vb.set_label(2, 0);
        QuantumGraph prod = qg_product(single(va), single(vb));
        REQUIRE(prod.terms().size() == 1);
        CHECK(prod.terms()[0].graph.n() == 2);
        CHECK(prod.terms()[0].coeff == Rational(1));
    }

    TEST_CASE("loop-creating glue terms are dropped") {
        // an edge between labels 1,2 times a single vertex carrying both
        Graph one(1);
        LabelledGraph both(one, 2);
        both.set_label(1, 0);
        both.set_label(2, 0);
        QuantumGraph prod = qg_product(single(lone_edge(2, 1, 2)), single(both));
        CHECK(prod.is_zero());
        // hom multiplicativity justifies the removal: the factors never both
        // map into a simple graph
        for (const auto& g : all_graphs_up_to(3)) {
            LabelledGraph lg(g, 2);
            for (int u = 0; u < g.n(); ++u)
                for (int v = 0; v < g.n(); ++v) {
                    LabelledGraph labelled = with_label(with_label(lg, 1, u), 2, v);
                    Rational lhs = qg_eval(prod, labelled);
                    Rational rhs = qg_eval(single(lone_edge(2, 1, 2)), labelled) *
                                   qg_eval(single(both), labelled);
                    CHECK(lhs == rhs);
                }
        }
    }

    TEST_CASE("evaluation is linear and multiplicative") {
        QuantumGraph a = single(lone_edge(2, 1, 2));
        Graph pathg(3);
        pathg.add_edge(0, 1);
        pathg.add_edge(1, 2);
        LabelledGraph p(pathg, 2);
        p.set_label(1, 0);
        p.set_label(2, 2);
        QuantumGraph b = single(p);
        for (const auto& g : all_graphs_up_to(4)) {
            LabelledGraph lg(g, 2);
            for (int u = 0; u < g.n(); ++u)
                for (int v = 0; v < g.n(); ++v) {
                    LabelledGraph t = with_label(with_label(lg, 1, u), 2, v);
                    CHECK(qg_eval(qg_add(a, b), t) == qg_eval(a, t) + qg_eval(b, t));
                    CHECK(qg_eval(qg_product(a, b), t) == qg_eval(a, t) * qg_eval(b, t));
                    CHECK(qg_eval(qg_scale(a, Rational::of(3, 7)), t) ==
                          Rational::of(3, 7) * qg_eval(a, t));
                }
        }
    }

    TEST_CASE("distributivity on two-term combinations") {
        QuantumGraph a(2), b(2);
        a.add_term(Rational(2), lone_edge(2, 1, 2));
        Graph one(1);
        LabelledGraph v1(one, 2);
        v1.set_label(1, 0);
        a.add_term(Rational::of(-1, 2), v1);
        b.add_term(Rational(1), v1);
        b.add_term(Rational(3), lone_edge(2, 2, 1));
        QuantumGraph sum = qg_add(a, b);
        QuantumGraph c = single(lone_edge(2, 1, 2));
        for (const auto& g : all_graphs_up_to(4)) {
            LabelledGraph lg(g, 2);
            for (int u = 0; u < g.n(); ++u)
                for (int v = 0; v < g.n(); ++v) {
                    LabelledGraph t = with_label(with_label(lg, 1, u), 2, v);
                    CHECK(qg_eval(qg_product(sum, c), t) ==
                          qg_eval(qg_product(a, c), t) + qg_eval(qg_product(b, c), t));
                }
        }
    }

    TEST_CASE("half an edge evaluates to one on the single edge") {
        QuantumGraph half = qg_scale(single(LabelledGraph(make_path(2), 0)), Rational::of(1, 2));
        CHECK(qg_eval(half, LabelledGraph(make_path(2), 0)) == Rational(1));
    }

    TEST_CASE("interpolation renormalises the edge count") {
        QuantumGraph k2 = single(LabelledGraph(make_clique(2), 0));
        QuantumGraph norm = interpolate(k2, {Rational(2)}, {Rational(0)});
        CHECK(qg_eval(norm, LabelledGraph(make_path(2), 0)) == Rational(1));
        CHECK(qg_eval(norm, LabelledGraph(Graph(2), 0)) == Rational(0));
        // forced linear polynomial: x/2
        REQUIRE(norm.terms().size() == 1);
        CHECK(norm.terms()[0].coeff == Rational::of(1, 2));
        CHECK_THROWS_AS(interpolate(k2, {Rational(1)}, {Rational(1)}), ValidationError);
    }

    TEST_CASE("interpolation as negation") {
        QuantumGraph e = single(lone_edge(2, 1, 2));
        QuantumGraph neg = interpolate(e, {Rational(0)}, {Rational(1)});
        Graph two(2);
        LabelledGraph nonedge(two, 2);
        nonedge.set_label(1, 0);
        nonedge.set_label(2, 1);
        CHECK(qg_eval(neg, nonedge) == Rational(1));
        CHECK(qg_eval(neg, lone_edge(2, 1, 2)) == Rational(0));
    }

    TEST_CASE("interpolation hits every observed value pointwise") {
        QuantumGraph a = single(LabelledGraph(make_path(3), 0));
        std::set<std::string> seen;
        std::vector<Rational> values;
        for (const auto& g : all_graphs_up_to(4)) {
            Rational v = qg_eval(a, LabelledGraph(g, 0));
            if (seen.insert(v.to_string()).second) values.push_back(v);
        }
        REQUIRE(values.size() >= 3);
        std::vector<Rational> splus{values[0], values[2]};
        std::vector<Rational> sminus{values[1]};
        QuantumGraph res = interpolate(a, splus, sminus);
        // degree stays below the point count
        CHECK(res.terms().size() <= 16);
        for (const auto& g : all_graphs_up_to(4)) {
            LabelledGraph lg(g, 0);
            Rational v = qg_eval(a, lg);
            Rational r = qg_eval(res, lg);
            bool in_plus = std::find(splus.begin(), splus.end(), v) != splus.end();
            bool in_minus = std::find(sminus.begin(), sminus.end(), v) != sminus.end();
            if (in_plus) CHECK(r == Rational(1));
            if (in_minus) CHECK(r == Rational(0));
        }
    }

    TEST_CASE("json round trip") {
        QuantumGraph a(2);
        a.add_term(Rational::of(-7, 3), lone_edge(2, 1, 2));
        a.add_term(Rational(5), LabelledGraph(make_clique(3), 2));
        std::string j = encode_quantum_json(a);
        QuantumGraph back = decode_quantum_json(j);
        CHECK(encode_quantum_json(back) == j);
        for (const auto& g : all_graphs_up_to(3)) {
            LabelledGraph lg(g, 2);
            for (int u = 0; u < g.n(); ++u)
                for (int v = 0; v < g.n(); ++v) {
                    LabelledGraph t = with_label(with_label(lg, 1, u), 2, v);
                    CHECK(qg_eval(a, t) == qg_eval(back, t));
                }
        }
    }
}
