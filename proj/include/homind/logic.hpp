#pragma once

// Counting first-order logic over graphs: the AST with threshold
// quantifiers, label-based semantics, syntactic fragment measures, the two
// constructive translations (construction tree -> formula family, formula ->
// quantum graph per target size), and bounded sentence separation.

#include <cstdint>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "homind/decomp.hpp"
#include "homind/graph.hpp"
#include "homind/quantum.hpp"

namespace homind {

struct Formula;
using FormulaPtr = std::shared_ptr<const Formula>;

struct Formula {
    enum class Kind { Eq, Edge, Not, Or, And, CountExists, ExistsExactly, Top, Bottom };
    Kind kind = Kind::Top;
    int a = 0, b = 0;    // atom variables, 1-based
    int threshold = 0;   // quantifiers
    int var = 0;         // quantified variable
    FormulaPtr lhs, rhs; // Or / And
    FormulaPtr body;     // Not / quantifiers
};

FormulaPtr f_eq(int i, int j);
FormulaPtr f_edge(int i, int j);
FormulaPtr f_not(FormulaPtr f);
FormulaPtr f_or(FormulaPtr a, FormulaPtr b);
FormulaPtr f_and(FormulaPtr a, FormulaPtr b);
FormulaPtr f_count_exists(int t, int var, FormulaPtr body);
FormulaPtr f_exists_exactly(int t, int var, FormulaPtr body);
FormulaPtr f_top();
FormulaPtr f_bottom();

// free variables interpreted through g's labels; throws PreconditionError on
// an unassigned free variable
bool evaluate(const FormulaPtr& f, const LabelledGraph& g);

struct FragmentInfo {
    int quantifier_rank = 0;
    std::set<int> variables;
    std::set<int> free_variables;
    int max_threshold = 0;
    bool guarded = true; // every quantifier is of the guarded shape
    bool in_ckq(int k, int q) const;
};

FragmentInfo fragment_check(const FormulaPtr& f);

std::string formula_to_sexpr(const FormulaPtr& f);
FormulaPtr parse_formula(const std::string& text); // s-expression or JSON
std::string formula_to_json(const FormulaPtr& f);

// phi_m: true on exactly the graphs G (of at most max_target_n vertices, with
// F's labels assigned) where hom(F, G) = m; built by induction over the
// construction tree, guarded quantifiers on demand
FormulaPtr synth_formula(const LabelledGraph& f, const ConstructionTree& w, std::uint64_t m,
                         bool guarded, int max_target_n);

// quantum graph modelling phi for graphs with exactly n vertices; every term
// stays in the (guarded) construction class at (k, q)
QuantumGraph synth_qg(const FormulaPtr& phi, int n, int k, int q, bool guarded);

struct SentenceSeparation {
    bool equivalent = true;
    FormulaPtr sentence; // distinguishing sentence when inequivalent
};

// C^k_q-equivalence by type refinement over assignments, with an explicit
// separating sentence; independent of the pebble-game route
SentenceSeparation ckq_sentence_equivalence(const Graph& g, const Graph& h, int k, int q);

// guarded variant for pointed graphs (one labelled vertex); also returns the
// battery of type formulas with free variable x1
struct GcPointedResult {
    bool equivalent = true;
    FormulaPtr formula; // separating formula with free x1 when inequivalent
    std::vector<FormulaPtr> battery;
};
GcPointedResult gc_pointed_equivalence(const Graph& g, int v, const Graph& h, int w, int k, int q);

// exposed for diagnostics: structural shrink of a separating sentence
FormulaPtr minimize_separating(FormulaPtr phi, const LabelledGraph& a, const LabelledGraph& b);

struct DistinguishResult {
    enum class Status { Found, EquivalentByGame, Inconclusive };
    Status status = Status::Inconclusive;
    Graph witness;
    FormulaPtr sentence;
    std::string note;
};

// find F in the class at (k, q) with hom(F, g) != hom(F, h), via a
// distinguishing sentence expanded into a quantum graph
DistinguishResult distinguishing_graph(const Graph& g, const Graph& h, int k, int q);

} // namespace homind
