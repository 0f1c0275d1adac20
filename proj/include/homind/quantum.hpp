#pragma once

// Formal rational linear combinations of labelled graphs, with the product
// that drops loop-creating terms, linear evaluation through hom counts, and
// the Lagrange interpolation that renormalises hom values to 0/1.

#include <vector>

#include "homind/bignum.hpp"
#include "homind/graph.hpp"

namespace homind {

struct QgTerm {
    Rational coeff;
    LabelledGraph graph;
};

class QuantumGraph {
  public:
    QuantumGraph() = default;
    explicit QuantumGraph(int arity) : arity_(arity) {}
    QuantumGraph(Rational c, LabelledGraph g);

    int arity() const { return arity_; }
    const std::vector<QgTerm>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    // coefficient 1 on the graph with no vertices: the multiplicative unit
    static QuantumGraph one(int arity);

    // bulk construction with a single normalisation pass
    static QuantumGraph from_terms(int arity, std::vector<QgTerm> terms);

    void add_term(Rational c, LabelledGraph g);

  private:
    friend QuantumGraph qg_add(const QuantumGraph&, const QuantumGraph&);
    friend QuantumGraph qg_product(const QuantumGraph&, const QuantumGraph&);
    friend QuantumGraph qg_scale(const QuantumGraph&, const Rational&);
    void normalize();
    int arity_ = 0;
    std::vector<QgTerm> terms_;
};

QuantumGraph qg_add(const QuantumGraph& a, const QuantumGraph& b);
QuantumGraph qg_scale(const QuantumGraph& a, const Rational& c);
// termwise glue products; terms whose gluing creates a loop are removed
QuantumGraph qg_product(const QuantumGraph& a, const QuantumGraph& b);
QuantumGraph qg_pow(const QuantumGraph& a, int e);

Rational qg_eval(const QuantumGraph& a, const LabelledGraph& g);

// hom(result, G) is 1 whenever hom(a, G) lies in s_plus and 0 whenever it
// lies in s_minus; built as a polynomial in a by Lagrange interpolation, so
// the result stays inside the product closure of a's terms
QuantumGraph interpolate(const QuantumGraph& a, const std::vector<Rational>& s_plus,
                         const std::vector<Rational>& s_minus, std::size_t term_budget = 0);

std::string encode_quantum_json(const QuantumGraph& a);
QuantumGraph decode_quantum_json(const std::string& text);

} // namespace homind
