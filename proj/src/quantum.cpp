#include "homind/quantum.hpp"

#include <algorithm>
#include <map>

#include <json.hpp>

#include "homind/canonical.hpp"
#include "homind/codec.hpp"
#include "homind/hom.hpp"

namespace homind {

namespace {

constexpr int kMergeMaxN = 16;

// merge key; empty string means "keep verbatim"
std::string merge_key(const LabelledGraph& g) {
    if (g.fully_labelled()) {
        // the label-least vertex order is canonical for fully labelled graphs
        return "f!" + canonical_form(g);
    }
    if (g.n() <= kMergeMaxN) return "c!" + canonical_form(g);
    if (g.assigned_labels().empty()) {
        // large unlabelled graphs merge by the multiset of component forms
        auto comps = g.graph().connected_components();
        bool ok = true;
        for (auto& c : comps)
            if (static_cast<int>(c.size()) > kMergeMaxN) ok = false;
        if (ok) {
            std::vector<std::string> keys;
            for (auto& c : comps) keys.push_back(canonical_form(g.graph().induced(c)));
            std::sort(keys.begin(), keys.end());
            std::string out = "m!";
            for (auto& k : keys) out += k + "&";
            return out;
        }
    }
    return "";
}

} // namespace

QuantumGraph::QuantumGraph(Rational c, LabelledGraph g) : arity_(g.arity()) {
    add_term(std::move(c), std::move(g));
}

QuantumGraph QuantumGraph::one(int arity) {
    return QuantumGraph(Rational(1), LabelledGraph(Graph(0), arity));
}

QuantumGraph QuantumGraph::from_terms(int arity, std::vector<QgTerm> terms) {
    QuantumGraph r(arity);
    for (auto& t : terms)
        if (t.graph.arity() != arity) t.graph.set_arity(std::max(arity, t.graph.arity()));
    r.terms_ = std::move(terms);
    r.normalize();
    return r;
}

void QuantumGraph::add_term(Rational c, LabelledGraph g) {
    if (g.arity() != arity_) {
        if (g.arity() > arity_) arity_ = g.arity();
        else g.set_arity(arity_);
    }
    terms_.push_back({std::move(c), std::move(g)});
    normalize();
}

void QuantumGraph::normalize() {
    std::vector<QgTerm> out;
    std::map<std::string, std::size_t> index;
    for (auto& t : terms_) {
        if (t.coeff.is_zero()) continue;
        std::string key = merge_key(t.graph);
        if (key.empty()) {
            out.push_back(std::move(t));
            continue;
        }
        auto it = index.find(key);
        if (it == index.end()) {
            index.emplace(std::move(key), out.size());
            out.push_back(std::move(t));
        } else {
            out[it->second].coeff = out[it->second].coeff + t.coeff;
        }
    }
    std::erase_if(out, [](const QgTerm& t) { return t.coeff.is_zero(); });
    terms_ = std::move(out);
}

QuantumGraph qg_add(const QuantumGraph& a, const QuantumGraph& b) {
    QuantumGraph r(std::max(a.arity(), b.arity()));
    r.terms_ = a.terms_;
    for (auto& t : r.terms_) t.graph.set_arity(r.arity_);
    for (auto t : b.terms_) {
        t.graph.set_arity(r.arity_);
        r.terms_.push_back(std::move(t));
    }
    r.normalize();
    return r;
}

QuantumGraph qg_scale(const QuantumGraph& a, const Rational& c) {
    if (c.is_zero()) return QuantumGraph(a.arity());
    QuantumGraph r = a;
    for (auto& t : r.terms_) t.coeff = t.coeff * c;
    return r;
}

QuantumGraph qg_product(const QuantumGraph& a, const QuantumGraph& b) {
    if (a.arity() != b.arity())
        throw ValidationError("qg_product: label arity mismatch");
    QuantumGraph r(a.arity());
    // merge as terms arrive: the raw cross product can dwarf the merged form
    std::map<std::string, std::size_t> index;
    for (const auto& ta : a.terms_)
        for (const auto& tb : b.terms_) {
            bool loop = false;
            LabelledGraph g = glue_product(ta.graph, tb.graph, &loop);
            if (loop) continue; // gluing created a loop: the term is removed
            Rational c = ta.coeff * tb.coeff;
            std::string key = merge_key(g);
            if (key.empty()) {
                r.terms_.push_back({std::move(c), std::move(g)});
                continue;
            }
            auto it = index.find(key);
            if (it == index.end()) {
                index.emplace(std::move(key), r.terms_.size());
                r.terms_.push_back({std::move(c), std::move(g)});
            } else {
                r.terms_[it->second].coeff = r.terms_[it->second].coeff + c;
            }
        }
    r.normalize();
    return r;
}

QuantumGraph qg_pow(const QuantumGraph& a, int e) {
    QuantumGraph r = QuantumGraph::one(a.arity());
    for (int i = 0; i < e; ++i) r = qg_product(r, a);
    return r;
}

Rational qg_eval(const QuantumGraph& a, const LabelledGraph& g) {
    Rational total;
    LabelledGraph target = g;
    if (target.arity() < a.arity()) target.set_arity(a.arity());
    for (const auto& t : a.terms()) {
        BigUint h = hom_count(t.graph, target);
        total = total + t.coeff * Rational(BigInt(h), BigUint(1));
    }
    return total;
}

QuantumGraph interpolate(const QuantumGraph& a, const std::vector<Rational>& s_plus,
                         const std::vector<Rational>& s_minus, std::size_t term_budget) {
    for (const auto& p : s_plus)
        for (const auto& m : s_minus)
            if (p == m) throw ValidationError("interpolate: S+ and S- overlap at " + p.to_string());

    // Lagrange polynomial through (s, 1) for s in S+ and (s, 0) for s in S-
    std::vector<Rational> points = s_plus;
    points.insert(points.end(), s_minus.begin(), s_minus.end());
    std::vector<Rational> poly{Rational(0)}; // coefficients, low degree first
    auto poly_add_scaled = [&](const std::vector<Rational>& q, const Rational& c) {
        if (poly.size() < q.size()) poly.resize(q.size(), Rational(0));
        for (std::size_t i = 0; i < q.size(); ++i) poly[i] = poly[i] + q[i] * c;
    };
    for (const auto& s : s_plus) {
        std::vector<Rational> basis{Rational(1)};
        Rational denom(1);
        for (const auto& r : points) {
            if (r == s) continue;
            // basis *= (x - r)
            std::vector<Rational> next(basis.size() + 1, Rational(0));
            for (std::size_t i = 0; i < basis.size(); ++i) {
                next[i + 1] = next[i + 1] + basis[i];
                next[i] = next[i] - basis[i] * r;
            }
            basis = std::move(next);
            denom = denom * (s - r);
        }
        Rational scale = Rational(1) / denom;
        poly_add_scaled(basis, scale);
    }

    QuantumGraph result(a.arity());
    QuantumGraph power = QuantumGraph::one(a.arity());
    for (std::size_t d = 0; d < poly.size(); ++d) {
        if (!poly[d].is_zero()) result = qg_add(result, qg_scale(power, poly[d]));
        if (d + 1 < poly.size()) {
            power = qg_product(power, a);
            if (term_budget && power.terms().size() > term_budget)
                throw CapabilityError("interpolation exceeded the term budget");
        }
    }
    return result;
}

std::string encode_quantum_json(const QuantumGraph& a) {
    nlohmann::ordered_json j;
    j["terms"] = nlohmann::ordered_json::array();
    for (const auto& t : a.terms()) {
        nlohmann::ordered_json jt;
        jt["num"] = t.coeff.num().to_string();
        jt["den"] = t.coeff.den().to_string();
        jt["graph"] = nlohmann::ordered_json::parse(encode_graph_json(t.graph));
        j["terms"].push_back(jt);
    }
    j["arity"] = a.arity();
    return j.dump();
}

QuantumGraph decode_quantum_json(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(std::string("bad JSON: ") + e.what(), 1, static_cast<int>(e.byte));
    }
    QuantumGraph out(j.value("arity", 0));
    if (j.contains("terms"))
        for (auto& jt : j["terms"]) {
            Rational num = Rational::parse(jt["num"].get<std::string>());
            Rational den = Rational::parse(jt["den"].get<std::string>());
            out.add_term(num / den, decode_graph(jt["graph"].dump()));
        }
    return out;
}

} // namespace homind
