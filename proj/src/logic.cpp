#include "homind/logic.hpp"

#include <algorithm>
#include <functional>
#include <map>

#include <json.hpp>

#include "homind/games.hpp"
#include "homind/hom.hpp"

namespace homind {

namespace {

FormulaPtr node(Formula f) { return std::make_shared<const Formula>(std::move(f)); }

void require_var(int i) {
    if (i < 1) throw ValidationError("variable indices are 1-based");
}

} // namespace

FormulaPtr f_eq(int i, int j) {
    require_var(i);
    require_var(j);
    Formula f;
    f.kind = Formula::Kind::Eq;
    f.a = i;
    f.b = j;
    return node(std::move(f));
}

FormulaPtr f_edge(int i, int j) {
    require_var(i);
    require_var(j);
    Formula f;
    f.kind = Formula::Kind::Edge;
    f.a = i;
    f.b = j;
    return node(std::move(f));
}

FormulaPtr f_not(FormulaPtr b) {
    Formula f;
    f.kind = Formula::Kind::Not;
    f.body = std::move(b);
    return node(std::move(f));
}

FormulaPtr f_or(FormulaPtr a, FormulaPtr b) {
    Formula f;
    f.kind = Formula::Kind::Or;
    f.lhs = std::move(a);
    f.rhs = std::move(b);
    return node(std::move(f));
}

FormulaPtr f_and(FormulaPtr a, FormulaPtr b) {
    Formula f;
    f.kind = Formula::Kind::And;
    f.lhs = std::move(a);
    f.rhs = std::move(b);
    return node(std::move(f));
}

FormulaPtr f_count_exists(int t, int var, FormulaPtr body) {
    require_var(var);
    if (t < 0) throw ValidationError("negative threshold");
    Formula f;
    f.kind = Formula::Kind::CountExists;
    f.threshold = t;
    f.var = var;
    f.body = std::move(body);
    return node(std::move(f));
}

FormulaPtr f_exists_exactly(int t, int var, FormulaPtr body) {
    require_var(var);
    if (t < 0) throw ValidationError("negative threshold");
    Formula f;
    f.kind = Formula::Kind::ExistsExactly;
    f.threshold = t;
    f.var = var;
    f.body = std::move(body);
    return node(std::move(f));
}

FormulaPtr f_top() {
    Formula f;
    f.kind = Formula::Kind::Top;
    return node(std::move(f));
}

FormulaPtr f_bottom() {
    Formula f;
    f.kind = Formula::Kind::Bottom;
    return node(std::move(f));
}

// ---- evaluation ----

bool evaluate(const FormulaPtr& f, const LabelledGraph& g) {
    using K = Formula::Kind;
    switch (f->kind) {
        case K::Top: return true;
        case K::Bottom: return false;
        case K::Eq:
        case K::Edge: {
            int va = g.label_vertex(f->a), vb = g.label_vertex(f->b);
            if (va < 0 || vb < 0)
                throw PreconditionError("free variable x" +
                                        std::to_string(va < 0 ? f->a : f->b) +
                                        " has no label in the graph");
            return f->kind == K::Eq ? va == vb : g.graph().has_edge(va, vb);
        }
        case K::Not: return !evaluate(f->body, g);
        case K::Or: return evaluate(f->lhs, g) || evaluate(f->rhs, g);
        case K::And: return evaluate(f->lhs, g) && evaluate(f->rhs, g);
        case K::CountExists:
        case K::ExistsExactly: {
            LabelledGraph gg = g;
            if (gg.arity() < f->var) gg.set_arity(f->var);
            int count = 0;
            int stop = f->threshold + 1;
            for (int v = 0; v < g.n() && count < stop; ++v)
                if (evaluate(f->body, with_label(gg, f->var, v))) ++count;
            return f->kind == K::CountExists ? count >= f->threshold : count == f->threshold;
        }
    }
    throw ValidationError("corrupt formula");
}

// ---- fragment measures ----

namespace {

void scan(const FormulaPtr& f, FragmentInfo& info, std::set<int>& free_here, int& qr) {
    using K = Formula::Kind;
    switch (f->kind) {
        case K::Top:
        case K::Bottom: qr = 0; return;
        case K::Eq:
        case K::Edge:
            info.variables.insert(f->a);
            info.variables.insert(f->b);
            free_here.insert(f->a);
            free_here.insert(f->b);
            qr = 0;
            return;
        case K::Not: scan(f->body, info, free_here, qr); return;
        case K::Or:
        case K::And: {
            int qa = 0, qb = 0;
            scan(f->lhs, info, free_here, qa);
            scan(f->rhs, info, free_here, qb);
            qr = std::max(qa, qb);
            return;
        }
        case K::CountExists:
        case K::ExistsExactly: {
            info.variables.insert(f->var);
            info.max_threshold = std::max(
                info.max_threshold,
                f->kind == K::ExistsExactly ? f->threshold + 1 : f->threshold);
            std::set<int> inner;
            int qb = 0;
            scan(f->body, info, inner, qb);
            inner.erase(f->var);
            free_here.insert(inner.begin(), inner.end());
            qr = qb + 1;
            // guarded shape: exists x (E y x and psi), y distinct from x
            bool ok = false;
            if (f->body->kind == K::And && f->body->lhs->kind == K::Edge) {
                int a = f->body->lhs->a, b = f->body->lhs->b;
                ok = (a == f->var) != (b == f->var);
            }
            if (!ok) info.guarded = false;
            return;
        }
    }
}

} // namespace

bool FragmentInfo::in_ckq(int k, int q) const {
    if (quantifier_rank > q) return false;
    if (static_cast<int>(variables.size()) > k) return false;
    for (int v : variables)
        if (v > k) return false;
    return true;
}

FragmentInfo fragment_check(const FormulaPtr& f) {
    FragmentInfo info;
    std::set<int> free_here;
    int qr = 0;
    scan(f, info, free_here, qr);
    info.quantifier_rank = qr;
    info.free_variables = std::move(free_here);
    return info;
}

// ---- text forms ----

std::string formula_to_sexpr(const FormulaPtr& f) {
    using K = Formula::Kind;
    switch (f->kind) {
        case K::Top: return "top";
        case K::Bottom: return "bot";
        case K::Eq:
            return "(eq x" + std::to_string(f->a) + " x" + std::to_string(f->b) + ")";
        case K::Edge:
            return "(E x" + std::to_string(f->a) + " x" + std::to_string(f->b) + ")";
        case K::Not: return "(not " + formula_to_sexpr(f->body) + ")";
        case K::Or: return "(or " + formula_to_sexpr(f->lhs) + " " + formula_to_sexpr(f->rhs) + ")";
        case K::And:
            return "(and " + formula_to_sexpr(f->lhs) + " " + formula_to_sexpr(f->rhs) + ")";
        case K::CountExists:
            return "(geq " + std::to_string(f->threshold) + " x" + std::to_string(f->var) + " " +
                   formula_to_sexpr(f->body) + ")";
        case K::ExistsExactly:
            return "(exact " + std::to_string(f->threshold) + " x" + std::to_string(f->var) + " " +
                   formula_to_sexpr(f->body) + ")";
    }
    return "?";
}

namespace {

struct SexprParser {
    const std::string& s;
    std::size_t i = 0;

    void ws() {
        while (i < s.size() && isspace(static_cast<unsigned char>(s[i]))) ++i;
    }
    std::string token() {
        ws();
        std::size_t start = i;
        if (i < s.size() && (s[i] == '(' || s[i] == ')')) return s.substr(i++, 1);
        while (i < s.size() && !isspace(static_cast<unsigned char>(s[i])) && s[i] != '(' &&
               s[i] != ')')
            ++i;
        if (start == i) throw ParseError("unexpected end of formula", 1, static_cast<int>(i) + 1);
        return s.substr(start, i - start);
    }
    int var(const std::string& t) {
        if (t.size() < 2 || t[0] != 'x')
            throw ParseError("expected a variable like x1, got '" + t + "'", 1,
                             static_cast<int>(i));
        return std::stoi(t.substr(1));
    }

    FormulaPtr expr() {
        ws();
        std::string t = token();
        if (t == "top") return f_top();
        if (t == "bot") return f_bottom();
        if (t != "(") throw ParseError("expected '('", 1, static_cast<int>(i));
        std::string head = token();
        FormulaPtr out;
        if (head == "eq" || head == "E") {
            int a = var(token()), b = var(token());
            out = head == "eq" ? f_eq(a, b) : f_edge(a, b);
        } else if (head == "not") {
            out = f_not(expr());
        } else if (head == "or" || head == "and") {
            std::vector<FormulaPtr> parts;
            while (true) {
                ws();
                if (i < s.size() && s[i] == ')') break;
                parts.push_back(expr());
            }
            if (parts.empty()) throw ParseError("empty connective", 1, static_cast<int>(i));
            out = parts[0];
            for (std::size_t j = 1; j < parts.size(); ++j)
                out = head == "or" ? f_or(out, parts[j]) : f_and(out, parts[j]);
        } else if (head == "geq" || head == "exact") {
            int t0 = std::stoi(token());
            int v = var(token());
            FormulaPtr b = expr();
            out = head == "geq" ? f_count_exists(t0, v, b) : f_exists_exactly(t0, v, b);
        } else {
            throw ParseError("unknown form '" + head + "'", 1, static_cast<int>(i));
        }
        ws();
        std::string close = token();
        if (close != ")") throw ParseError("expected ')'", 1, static_cast<int>(i));
        return out;
    }
};

nlohmann::ordered_json to_json_impl(const FormulaPtr& f) {
    using K = Formula::Kind;
    nlohmann::ordered_json j;
    switch (f->kind) {
        case K::Top: j["kind"] = "top"; break;
        case K::Bottom: j["kind"] = "bot"; break;
        case K::Eq:
            j["kind"] = "eq";
            j["a"] = f->a;
            j["b"] = f->b;
            break;
        case K::Edge:
            j["kind"] = "edge";
            j["a"] = f->a;
            j["b"] = f->b;
            break;
        case K::Not:
            j["kind"] = "not";
            j["body"] = to_json_impl(f->body);
            break;
        case K::Or:
        case K::And:
            j["kind"] = f->kind == K::Or ? "or" : "and";
            j["lhs"] = to_json_impl(f->lhs);
            j["rhs"] = to_json_impl(f->rhs);
            break;
        case K::CountExists:
        case K::ExistsExactly:
            j["kind"] = f->kind == K::CountExists ? "geq" : "exact";
            j["t"] = f->threshold;
            j["var"] = f->var;
            j["body"] = to_json_impl(f->body);
            break;
    }
    return j;
}

FormulaPtr from_json_impl(const nlohmann::json& j) {
    std::string k = j.at("kind").get<std::string>();
    if (k == "top") return f_top();
    if (k == "bot") return f_bottom();
    if (k == "eq") return f_eq(j.at("a").get<int>(), j.at("b").get<int>());
    if (k == "edge") return f_edge(j.at("a").get<int>(), j.at("b").get<int>());
    if (k == "not") return f_not(from_json_impl(j.at("body")));
    if (k == "or") return f_or(from_json_impl(j.at("lhs")), from_json_impl(j.at("rhs")));
    if (k == "and") return f_and(from_json_impl(j.at("lhs")), from_json_impl(j.at("rhs")));
    if (k == "geq")
        return f_count_exists(j.at("t").get<int>(), j.at("var").get<int>(),
                              from_json_impl(j.at("body")));
    if (k == "exact")
        return f_exists_exactly(j.at("t").get<int>(), j.at("var").get<int>(),
                                from_json_impl(j.at("body")));
    throw ParseError("unknown formula kind '" + k + "'", 1, 1);
}

} // namespace

std::string formula_to_json(const FormulaPtr& f) { return to_json_impl(f).dump(); }

FormulaPtr parse_formula(const std::string& text) {
    for (char ch : text) {
        if (isspace(static_cast<unsigned char>(ch))) continue;
        if (ch == '{') {
            try {
                return from_json_impl(nlohmann::json::parse(text));
            } catch (const nlohmann::json::parse_error& e) {
                throw ParseError(std::string("bad JSON: ") + e.what(), 1,
                                 static_cast<int>(e.byte));
            }
        }
        break;
    }
    SexprParser p{text, 0};
    FormulaPtr out = p.expr();
    p.ws();
    if (p.i != text.size()) throw ParseError("trailing input", 1, static_cast<int>(p.i) + 1);
    return out;
}

// ---- construction tree -> formula family ----

namespace {

// exists-exactly with thresholds clamped to the target size: on graphs with
// at most n vertices, "at least n+1" is plainly false
FormulaPtr exact_capped(int c, int var, const FormulaPtr& body, int n) {
    if (c == 0) return f_not(f_count_exists(1, var, body));
    if (c >= n) return f_count_exists(c, var, body);
    return f_and(f_count_exists(c, var, body), f_not(f_count_exists(c + 1, var, body)));
}

struct DecompGen {
    // decompositions m = sum c_i * m_i with distinct parts m_i in 1..max_part
    // and sum c_i <= c_budget
    std::vector<std::vector<std::pair<std::uint64_t, int>>> out; // (part, count)
    std::vector<std::pair<std::uint64_t, int>> cur;
    std::uint64_t limit;

    void gen(std::uint64_t m, std::uint64_t max_part, int c_budget) {
        if (out.size() > limit)
            throw CapabilityError("formula synthesis: decomposition count exceeds budget");
        if (m == 0) {
            out.push_back(cur);
            return;
        }
        if (max_part == 0 || c_budget <= 0) return;
        std::uint64_t top = std::min<std::uint64_t>(max_part, m);
        for (std::uint64_t p = top; p >= 1; --p) {
            for (int c = 1; c <= c_budget && static_cast<std::uint64_t>(c) * p <= m; ++c) {
                cur.emplace_back(p, c);
                gen(m - static_cast<std::uint64_t>(c) * p, p - 1, c_budget - c);
                cur.pop_back();
            }
        }
    }
};

struct FormulaSynth {
    const ConstructionTree& ct;
    bool guarded;
    int max_n;
    std::vector<double> log_bound; // log of the hom-count bound per node
    std::map<std::pair<long, std::uint64_t>, FormulaPtr> memo;
    std::map<std::tuple<long, std::size_t, std::uint64_t>, FormulaPtr> prod_memo;

    // hom(node, G) <= max_n^{#unlabelled vertices}; kept in logs to dodge overflow
    double bound_log(int t) const { return log_bound[t]; }
    bool above_bound(int t, std::uint64_t m) const {
        if (m == 0) return false;
        return std::log(static_cast<double>(m)) > bound_log(t) + 1e-9;
    }

    int unlabelled_count(int t) const {
        const auto& nd = ct.nodes[t];
        int c = 0;
        for (int v : nd.vertices) {
            bool lab = false;
            for (int l = 1; l <= ct.arity; ++l)
                if (nd.label_to_vertex[l - 1] == v) lab = true;
            if (!lab) ++c;
        }
        return c;
    }

    std::uint64_t child_bound(int t) const {
        double b = bound_log(t);
        if (b > 40) return ~0ull; // effectively unbounded at desk scale
        return static_cast<std::uint64_t>(std::llround(std::exp(b)));
    }

    FormulaPtr leaf_unit(int t) const {
        const auto& nd = ct.nodes[t];
        FormulaPtr conj = f_top();
        bool first = true;
        auto add = [&](FormulaPtr p) {
            conj = first ? p : f_and(conj, p);
            first = false;
        };
        for (int i = 1; i <= ct.arity; ++i)
            for (int j = i + 1; j <= ct.arity; ++j) {
                int vi = nd.label_to_vertex[i - 1], vj = nd.label_to_vertex[j - 1];
                if (vi < 0 || vj < 0) continue;
                if (vi == vj) add(f_eq(i, j));
                std::pair<int, int> e{std::min(vi, vj), std::max(vi, vj)};
                if (std::binary_search(nd.edges.begin(), nd.edges.end(), e)) add(f_edge(i, j));
            }
        return conj;
    }

    FormulaPtr phi(int t, std::uint64_t m) {
        if (above_bound(t, m)) return f_bottom();
        auto key = std::make_pair(static_cast<long>(t), m);
        if (auto it = memo.find(key); it != memo.end()) return it->second;
        FormulaPtr out;
        const auto& nd = ct.nodes[t];
        if (nd.children.empty()) {
            FormulaPtr unit = leaf_unit(t);
            out = m == 1 ? unit : (m == 0 ? f_not(unit) : f_bottom());
        } else if (nd.children.size() == 1) {
            out = phi_elim(t, m);
        } else {
            out = phi_prod(t, 0, m);
        }
        memo[key] = out;
        return out;
    }

    // product node: factor m over the children, folded left to right
    FormulaPtr phi_prod(int t, std::size_t idx, std::uint64_t m) {
        const auto& kids = ct.nodes[t].children;
        if (idx + 1 == kids.size()) return phi(kids[idx], m);
        auto key = std::make_tuple(static_cast<long>(t), idx, m);
        if (auto it = prod_memo.find(key); it != prod_memo.end()) return it->second;
        FormulaPtr out;
        if (m == 0) {
            out = f_or(phi(kids[idx], 0), phi_prod(t, idx + 1, 0));
        } else {
            std::uint64_t cb = child_bound(kids[idx]);
            bool first = true;
            for (std::uint64_t m1 = 1; m1 <= m && m1 <= cb; ++m1) {
                if (m % m1) continue;
                FormulaPtr branch = f_and(phi(kids[idx], m1), phi_prod(t, idx + 1, m / m1));
                out = first ? branch : f_or(out, branch);
                first = false;
            }
            if (first) out = f_bottom();
        }
        prod_memo[key] = out;
        return out;
    }

    FormulaPtr phi_elim(int t, std::uint64_t m) {
        const auto& nd = ct.nodes[t];
        int child = nd.children[0];
        int l = nd.elim_label;
        // guarded variant relativises the quantifier to a labelled neighbour
        int guard_label = 0;
        if (guarded) {
            const auto& ch = ct.nodes[child];
            int v = ch.label_to_vertex[l - 1];
            for (int j = 1; j <= ct.arity && guard_label == 0; ++j) {
                if (j == l) continue;
                int w = ch.label_to_vertex[j - 1];
                if (w < 0) continue;
                std::pair<int, int> e{std::min(v, w), std::max(v, w)};
                if (std::binary_search(ch.edges.begin(), ch.edges.end(), e)) guard_label = j;
            }
            if (guard_label == 0)
                throw ValidationError("guarded synthesis on an unguarded elimination");
        }
        auto quant_body = [&](const FormulaPtr& f) {
            return guard_label ? f_and(f_edge(guard_label, l), f) : f;
        };
        FormulaPtr child_zero = phi(child, 0);
        auto exact_count = [&](int c, const FormulaPtr& f) {
            return exact_capped(c, l, quant_body(f), max_n);
        };
        if (m == 0) return exact_count(0, f_not(child_zero));
        DecompGen gen;
        gen.limit = 200000;
        gen.gen(m, child_bound(child), max_n);
        FormulaPtr out;
        bool first = true;
        for (const auto& decomp : gen.out) {
            int c_total = 0;
            for (auto [part, c] : decomp) c_total += c;
            FormulaPtr branch = exact_count(c_total, f_not(child_zero));
            for (auto [part, c] : decomp)
                branch = f_and(branch, exact_count(c, phi(child, part)));
            out = first ? branch : f_or(out, branch);
            first = false;
        }
        if (first) out = f_bottom();
        return out;
    }
};

} // namespace

FormulaPtr synth_formula(const LabelledGraph& f, const ConstructionTree& w, std::uint64_t m,
                         bool guarded, int max_target_n) {
    Verdict v = verify_labelled(f, w, w.arity, kInfDepth, guarded);
    if (!v.ok) throw ValidationError("synth_formula: witness invalid: " + v.violation);
    if (max_target_n < 1) throw ValidationError("synth_formula: target size must be positive");
    FormulaSynth synth{w, guarded, max_target_n, {}, {}, {}};
    synth.log_bound.resize(w.nodes.size());
    for (std::size_t t = 0; t < w.nodes.size(); ++t)
        synth.log_bound[t] =
            synth.unlabelled_count(static_cast<int>(t)) * std::log(static_cast<double>(max_target_n));
    return synth.phi(w.root, m);
}

// ---- formula -> quantum graph ----

namespace {

// rewrite to the connectives {not, or, exists>=}; guarded quantifier bodies
// keep their (E and psi) shape
FormulaPtr normalize(const FormulaPtr& f, bool guarded) {
    using K = Formula::Kind;
    switch (f->kind) {
        case K::Top:
        case K::Bottom:
        case K::Eq:
        case K::Edge: return f;
        case K::Not: return f_not(normalize(f->body, guarded));
        case K::Or: return f_or(normalize(f->lhs, guarded), normalize(f->rhs, guarded));
        case K::And: {
            FormulaPtr a = normalize(f->lhs, guarded);
            FormulaPtr b = normalize(f->rhs, guarded);
            return f_not(f_or(f_not(a), f_not(b)));
        }
        case K::CountExists: {
            if (guarded && f->body->kind == K::And && f->body->lhs->kind == K::Edge) {
                // keep the guard atom in place
                FormulaPtr psi = normalize(f->body->rhs, guarded);
                return f_count_exists(f->threshold, f->var, f_and(f->body->lhs, psi));
            }
            return f_count_exists(f->threshold, f->var, normalize(f->body, guarded));
        }
        case K::ExistsExactly: {
            FormulaPtr ge = f_count_exists(f->threshold, f->var, f->body);
            FormulaPtr gt = f_count_exists(f->threshold + 1, f->var, f->body);
            return normalize(f_and(ge, f_not(gt)), guarded);
        }
    }
    throw ValidationError("corrupt formula");
}

std::vector<Rational> range_set(int lo, int hi) {
    std::vector<Rational> out;
    for (int i = lo; i <= hi; ++i) out.emplace_back(i);
    return out;
}

struct QgSynth {
    int n, k;
    bool guarded;
    std::size_t term_budget = 0; // 0 = unbounded

    void check(const QuantumGraph& q) const {
        if (term_budget && q.terms().size() > term_budget)
            throw CapabilityError("quantum synthesis exceeded the term budget");
    }

    QuantumGraph run(const FormulaPtr& f) {
        using K = Formula::Kind;
        switch (f->kind) {
            case K::Top: return QuantumGraph::one(k);
            case K::Bottom: return QuantumGraph(k);
            case K::Eq: {
                Graph g(1);
                LabelledGraph lg(g, k);
                lg.set_label(f->a, 0);
                lg.set_label(f->b, 0);
                return QuantumGraph(Rational(1), lg);
            }
            case K::Edge: {
                if (f->a == f->b) return QuantumGraph(k); // E x x never holds
                Graph g(2);
                g.add_edge(0, 1);
                LabelledGraph lg(g, k);
                lg.set_label(f->a, 0);
                lg.set_label(f->b, 1);
                return QuantumGraph(Rational(1), lg);
            }
            case K::Not: {
                QuantumGraph r =
                    interpolate(run(f->body), range_set(0, 0), range_set(1, 1), term_budget);
                check(r);
                return r;
            }
            case K::Or: {
                QuantumGraph sum = qg_add(run(f->lhs), run(f->rhs));
                QuantumGraph r = interpolate(sum, range_set(1, 2), range_set(0, 0), term_budget);
                check(r);
                return r;
            }
            case K::CountExists: {
                QuantumGraph inner(k);
                if (guarded && f->body->kind == K::And && f->body->lhs->kind == K::Edge) {
                    const FormulaPtr& guard = f->body->lhs;
                    int other = guard->a == f->var ? guard->b : guard->a;
                    if (other == f->var)
                        throw ValidationError("guard must use a second variable");
                    Graph eg(2);
                    eg.add_edge(0, 1);
                    LabelledGraph fe(eg, k);
                    fe.set_label(other, 0);
                    fe.set_label(f->var, 1);
                    inner = qg_product(run(f->body->rhs), QuantumGraph(Rational(1), fe));
                } else {
                    inner = run(f->body);
                }
                std::vector<QgTerm> dropped_terms;
                for (const auto& t : inner.terms())
                    dropped_terms.push_back({t.coeff, without_label(t.graph, f->var)});
                QuantumGraph dropped = QuantumGraph::from_terms(k, std::move(dropped_terms));
                if (f->threshold > n) return QuantumGraph(k);
                if (f->threshold == 0) return QuantumGraph::one(k);
                check(dropped);
                QuantumGraph r = interpolate(dropped, range_set(f->threshold, n),
                                             range_set(0, f->threshold - 1), term_budget);
                check(r);
                return r;
            }
            default: throw ValidationError("synth_qg expects normal form");
        }
    }
};

} // namespace

namespace {

QuantumGraph synth_qg_impl(const FormulaPtr& phi, int n, int k, int q, bool guarded,
                           std::size_t term_budget);

}

QuantumGraph synth_qg(const FormulaPtr& phi, int n, int k, int q, bool guarded) {
    return synth_qg_impl(phi, n, k, q, guarded, 0);
}

namespace {

QuantumGraph synth_qg_impl(const FormulaPtr& phi, int n, int k, int q, bool guarded,
                           std::size_t term_budget) {
    FragmentInfo info = fragment_check(phi);
    if (!info.in_ckq(k, q))
        throw ValidationError("formula outside the requested fragment: qr " +
                              std::to_string(info.quantifier_rank) + ", " +
                              std::to_string(info.variables.size()) + " variables");
    if (guarded && !info.guarded) throw ValidationError("formula is not guarded");
    if (n < 1) throw ValidationError("target size must be positive");
    FormulaPtr nf = normalize(phi, guarded);
    QgSynth s{n, k, guarded, term_budget};
    QuantumGraph out = s.run(nf);
    if (info.free_variables.empty()) {
        // sentences end label-free; drop any stragglers
        std::vector<QgTerm> clean;
        for (const auto& t : out.terms()) {
            LabelledGraph g = t.graph;
            for (int l = 1; l <= g.arity(); ++l)
                if (g.label_assigned(l)) g.remove_label(l);
            clean.push_back({t.coeff, std::move(g)});
        }
        return QuantumGraph::from_terms(k, std::move(clean));
    }
    return out;
}

} // namespace

// ---- type refinement over assignments ----

namespace {

struct Refiner {
    const Graph& g;
    const Graph& h;
    int k, q;
    bool guarded;

    // points: per domain mask, (side, assignment) with assignment values per
    // variable in the mask
    struct Dom {
        std::vector<std::pair<int, std::vector<int>>> points;
        std::map<std::pair<int, std::vector<int>>, int> index;
        std::vector<int> colour;
        std::vector<FormulaPtr> block_formula; // per colour id
    };
    std::vector<Dom> doms; // indexed by mask

    const Graph& side(int s) const { return s == 0 ? g : h; }

    std::vector<int> mask_vars(int mask) const {
        std::vector<int> vars;
        for (int l = 1; l <= k; ++l)
            if ((mask >> (l - 1)) & 1) vars.push_back(l);
        return vars;
    }

    void build_points() {
        doms.resize(1 << k);
        for (int mask = 0; mask < (1 << k); ++mask) {
            auto vars = mask_vars(mask);
            for (int s = 0; s < 2; ++s) {
                std::vector<int> assign(vars.size(), 0);
                auto rec = [&](auto&& self, std::size_t i) -> void {
                    if (i == vars.size()) {
                        doms[mask].index[{s, assign}] =
                            static_cast<int>(doms[mask].points.size());
                        doms[mask].points.emplace_back(s, assign);
                        return;
                    }
                    for (int v = 0; v < side(s).n(); ++v) {
                        assign[i] = v;
                        self(self, i + 1);
                    }
                };
                rec(rec, 0);
            }
        }
    }

    // atomic type and its formula
    void init_layer() {
        for (int mask = 0; mask < (1 << k); ++mask) {
            auto vars = mask_vars(mask);
            auto& d = doms[mask];
            std::map<std::vector<int>, int> sig_ids;
            std::vector<FormulaPtr> formulas;
            d.colour.resize(d.points.size());
            for (std::size_t p = 0; p < d.points.size(); ++p) {
                auto [s, assign] = d.points[p];
                std::vector<int> sig;
                FormulaPtr fm = f_top();
                bool first = true;
                auto add = [&](bool val, FormulaPtr atom) {
                    sig.push_back(val);
                    FormulaPtr lit = val ? atom : f_not(atom);
                    fm = first ? lit : f_and(fm, lit);
                    first = false;
                };
                for (std::size_t i = 0; i < vars.size(); ++i)
                    for (std::size_t j = i + 1; j < vars.size(); ++j) {
                        add(assign[i] == assign[j], f_eq(vars[i], vars[j]));
                        add(side(s).has_edge(assign[i], assign[j]),
                            f_edge(vars[i], vars[j]));
                    }
                auto it = sig_ids.find(sig);
                if (it == sig_ids.end()) {
                    it = sig_ids.emplace(sig, static_cast<int>(sig_ids.size())).first;
                    formulas.push_back(fm);
                }
                d.colour[p] = it->second;
            }
            d.block_formula = std::move(formulas);
        }
    }

    int max_n() const { return std::max(g.n(), h.n()); }

    // one quantifier layer; returns the per-domain refinement record used by
    // the sentence extraction
    struct LayerRecord {
        // per domain: per point: sorted count signatures
        std::vector<std::vector<std::vector<std::tuple<int, int, int, int>>>> sigs;
        // entries (quant var, guard var or 0, child block, count)
    };

    LayerRecord advance() {
        LayerRecord rec;
        rec.sigs.resize(1 << k);
        std::vector<std::vector<int>> new_colour(1 << k);
        std::vector<std::vector<FormulaPtr>> new_formula(1 << k);
        for (int mask = 0; mask < (1 << k); ++mask) {
            auto vars = mask_vars(mask);
            auto& d = doms[mask];
            rec.sigs[mask].resize(d.points.size());
            std::map<std::pair<int, std::vector<std::tuple<int, int, int, int>>>, int> ids;
            std::vector<FormulaPtr> formulas;
            new_colour[mask].resize(d.points.size());
            for (std::size_t p = 0; p < d.points.size(); ++p) {
                auto [s, assign] = d.points[p];
                std::vector<std::tuple<int, int, int, int>> sig;
                for (int l = 1; l <= k; ++l) {
                    int emask = mask | (1 << (l - 1));
                    auto evars = mask_vars(emask);
                    auto& ed = doms[emask];
                    std::size_t lpos =
                        std::find(evars.begin(), evars.end(), l) - evars.begin();
                    if (!guarded) {
                        std::map<int, int> counts;
                        for (int v = 0; v < side(s).n(); ++v) {
                            std::vector<int> ea(evars.size());
                            for (std::size_t i = 0, j = 0; i < evars.size(); ++i)
                                ea[i] = evars[i] == l ? v : assign[j++];
                            counts[ed.colour[ed.index.at({s, ea})]]++;
                        }
                        for (auto [blk, c] : counts) sig.emplace_back(l, 0, blk, c);
                        (void)lpos;
                    } else {
                        // guarded: count over neighbours of each other assigned var
                        for (std::size_t gi = 0; gi < vars.size(); ++gi) {
                            if (vars[gi] == l) continue;
                            std::map<int, int> counts;
                            for (int v : side(s).neighbours(assign[gi])) {
                                std::vector<int> ea(evars.size());
                                for (std::size_t i = 0, j = 0; i < evars.size(); ++i)
                                    ea[i] = evars[i] == l ? v : assign[j++];
                                counts[ed.colour[ed.index.at({s, ea})]]++;
                            }
                            for (auto [blk, c] : counts) sig.emplace_back(l, vars[gi], blk, c);
                        }
                    }
                }
                std::sort(sig.begin(), sig.end());
                rec.sigs[mask][p] = sig;
                auto key = std::make_pair(d.colour[p], sig);
                auto it = ids.find(key);
                if (it == ids.end()) {
                    it = ids.emplace(key, static_cast<int>(ids.size())).first;
                    // block formula: old type and one exact-count conjunct per entry
                    FormulaPtr fm = d.block_formula[d.colour[p]];
                    for (auto [l, gv, blk, c] : sig) {
                        int emask = mask | (1 << (l - 1));
                        FormulaPtr body = doms[emask].block_formula[blk];
                        if (gv) body = f_and(f_edge(gv, l), body);
                        fm = f_and(fm, exact_capped(c, l, body, max_n()));
                    }
                    formulas.push_back(fm);
                }
                new_colour[mask][p] = it->second;
            }
            new_formula[mask] = std::move(formulas);
        }
        for (int mask = 0; mask < (1 << k); ++mask) {
            doms[mask].colour = std::move(new_colour[mask]);
            doms[mask].block_formula = std::move(new_formula[mask]);
        }
        return rec;
    }

    // find a separating formula for two points of the same domain, walking
    // layer by layer and emitting one exact-count quantifier per level
    FormulaPtr separate(int mask, int pa, int pb) {
        // replay the refinement, remembering layers
        build_points();
        init_layer();
        std::vector<LayerRecord> layers;
        std::vector<std::vector<std::vector<int>>> colours_at; // layer -> mask -> colours
        std::vector<std::vector<std::vector<FormulaPtr>>> formulas_at;
        colours_at.emplace_back(1 << k);
        formulas_at.emplace_back(1 << k);
        for (int m = 0; m < (1 << k); ++m) {
            colours_at[0][m] = doms[m].colour;
            formulas_at[0][m] = doms[m].block_formula;
        }
        for (int r = 1; r <= q; ++r) {
            layers.push_back(advance());
            colours_at.emplace_back(1 << k);
            formulas_at.emplace_back(1 << k);
            for (int m = 0; m < (1 << k); ++m) {
                colours_at[r][m] = doms[m].colour;
                formulas_at[r][m] = doms[m].block_formula;
            }
        }
        // first layer where the two points differ
        int r0 = -1;
        for (int r = 0; r <= q; ++r)
            if (colours_at[r][mask][pa] != colours_at[r][mask][pb]) {
                r0 = r;
                break;
            }
        if (r0 < 0) return nullptr;
        if (r0 == 0) return formulas_at[0][mask][colours_at[0][mask][pa]];
        // signatures at layer r0 diverge: find the first differing entry
        const auto& sa = layers[r0 - 1].sigs[mask][pa];
        const auto& sb = layers[r0 - 1].sigs[mask][pb];
        if (colours_at[r0 - 1][mask][pa] != colours_at[r0 - 1][mask][pb])
            return formulas_at[r0 - 1][mask][colours_at[r0 - 1][mask][pa]];
        std::map<std::tuple<int, int, int>, int> ca, cb;
        for (auto [l, gv, blk, c] : sa) ca[{l, gv, blk}] = c;
        for (auto [l, gv, blk, c] : sb) cb[{l, gv, blk}] = c;
        for (auto [key, c] : ca) {
            auto [l, gv, blk] = key;
            int other = cb.count(key) ? cb[key] : 0;
            if (c != other) {
                int emask = mask | (1 << (l - 1));
                FormulaPtr body = formulas_at[r0 - 1][emask][blk];
                if (gv) body = f_and(f_edge(gv, l), body);
                return exact_capped(c, l, body, max_n());
            }
        }
        for (auto [key, c] : cb) {
            if (!ca.count(key)) {
                auto [l, gv, blk] = key;
                int emask = mask | (1 << (l - 1));
                FormulaPtr body = formulas_at[r0 - 1][emask][blk];
                if (gv) body = f_and(f_edge(gv, l), body);
                return exact_capped(0, l, body, max_n());
            }
        }
        return nullptr;
    }
};

} // namespace

SentenceSeparation ckq_sentence_equivalence(const Graph& g, const Graph& h, int k, int q) {
    Refiner ref{g, h, k, q, false, {}};
    ref.build_points();
    ref.init_layer();
    for (int r = 0; r < q; ++r) ref.advance();
    int pa = ref.doms[0].index.at({0, {}});
    int pb = ref.doms[0].index.at({1, {}});
    SentenceSeparation out;
    // size difference is C^k_1-definable
    if (g.n() != h.n() && q >= 1 && k >= 1) {
        out.equivalent = false;
        int c = g.n();
        out.sentence = exact_capped(c, 1, f_eq(1, 1), std::max(g.n(), h.n()));
        return out;
    }
    if (ref.doms[0].colour[pa] == ref.doms[0].colour[pb]) return out;
    out.equivalent = false;
    Refiner fresh{g, h, k, q, false, {}};
    out.sentence = fresh.separate(0, pa, pb);
    return out;
}

GcPointedResult gc_pointed_equivalence(const Graph& g, int v, const Graph& h, int w, int k,
                                       int q) {
    Refiner ref{g, h, k, q, true, {}};
    ref.build_points();
    ref.init_layer();
    for (int r = 0; r < q; ++r) ref.advance();
    int mask = 1; // domain {x1}
    int pa = ref.doms[mask].index.at({0, {v}});
    int pb = ref.doms[mask].index.at({1, {w}});
    GcPointedResult out;
    out.battery = ref.doms[mask].block_formula;
    if (ref.doms[mask].colour[pa] == ref.doms[mask].colour[pb]) return out;
    out.equivalent = false;
    Refiner fresh{g, h, k, q, true, {}};
    out.formula = fresh.separate(mask, pa, pb);
    return out;
}

// ---- distinguishing graph ----

namespace {

// greedy structural shrink of a separating sentence: replace connectives by
// their branches wherever the result keeps telling the two graphs apart; one
// pass with an explicit context, so the cost stays linear in formula size
struct Shrinker {
    const LabelledGraph& a;
    const LabelledGraph& b;
    // candidates share all unchanged subtrees, so caching on the node address
    // and the label assignment makes each test cost only the fresh spine;
    // cached nodes are pinned so their addresses can never be recycled
    std::map<std::tuple<const Formula*, int, std::vector<int>>, bool> cache;
    std::vector<FormulaPtr> pin;

    bool cached_eval(const FormulaPtr& f, const LabelledGraph& g, int side) {
        using K = Formula::Kind;
        switch (f->kind) {
            case K::Top: return true;
            case K::Bottom: return false;
            case K::Eq:
            case K::Edge: return evaluate(f, g);
            default: break;
        }
        std::vector<int> labels(g.arity());
        for (int l = 1; l <= g.arity(); ++l) labels[l - 1] = g.label_vertex(l);
        auto key = std::make_tuple(f.get(), side, std::move(labels));
        if (auto it = cache.find(key); it != cache.end()) return it->second;
        pin.push_back(f);
        bool out = false;
        switch (f->kind) {
            case K::Not: out = !cached_eval(f->body, g, side); break;
            case K::Or: out = cached_eval(f->lhs, g, side) || cached_eval(f->rhs, g, side); break;
            case K::And:
                out = cached_eval(f->lhs, g, side) && cached_eval(f->rhs, g, side);
                break;
            case K::CountExists:
            case K::ExistsExactly: {
                LabelledGraph gg = g;
                if (gg.arity() < f->var) gg.set_arity(f->var);
                int count = 0;
                for (int v = 0; v < g.n() && count <= f->threshold; ++v)
                    if (cached_eval(f->body, with_label(gg, f->var, v), side)) ++count;
                out = f->kind == K::CountExists ? count >= f->threshold
                                                : count == f->threshold;
                break;
            }
            default: break;
        }
        cache.emplace(std::move(key), out);
        return out;
    }

    bool separates(const FormulaPtr& f) { return cached_eval(f, a, 0) != cached_eval(f, b, 1); }

    using Ctx = std::function<FormulaPtr(const FormulaPtr&)>;

    FormulaPtr shrink(FormulaPtr f, const Ctx& ctx) {
        using K = Formula::Kind;
        while (f->kind == K::And || f->kind == K::Or) {
            if (separates(ctx(f->lhs))) {
                f = f->lhs;
                continue;
            }
            if (separates(ctx(f->rhs))) {
                f = f->rhs;
                continue;
            }
            break;
        }
        switch (f->kind) {
            case K::And:
            case K::Or: {
                auto rebuild = [kind = f->kind](const FormulaPtr& l, const FormulaPtr& r) {
                    Formula c;
                    c.kind = kind;
                    c.lhs = l;
                    c.rhs = r;
                    return std::make_shared<const Formula>(std::move(c));
                };
                FormulaPtr rhs0 = f->rhs;
                FormulaPtr l2 = shrink(
                    f->lhs, [&](const FormulaPtr& g) { return ctx(rebuild(g, rhs0)); });
                FormulaPtr r2 = shrink(
                    f->rhs, [&](const FormulaPtr& g) { return ctx(rebuild(l2, g)); });
                return rebuild(l2, r2);
            }
            case K::Not:
            case K::CountExists:
            case K::ExistsExactly: {
                auto rebuild = [proto = f](const FormulaPtr& body) {
                    Formula c = *proto;
                    c.body = body;
                    return std::make_shared<const Formula>(std::move(c));
                };
                FormulaPtr b2 =
                    shrink(f->body, [&](const FormulaPtr& g) { return ctx(rebuild(g)); });
                return rebuild(b2);
            }
            default: return f;
        }
    }
};

FormulaPtr minimize_separating_impl(FormulaPtr phi, const LabelledGraph& a, const LabelledGraph& b) {
    Shrinker sh{a, b};
    if (!sh.separates(phi)) return phi;
    // iterate to a fixpoint; two passes usually suffice
    for (int round = 0; round < 4; ++round) {
        FormulaPtr next = sh.shrink(phi, [](const FormulaPtr& f) { return f; });
        if (formula_to_sexpr(next) == formula_to_sexpr(phi)) break;
        phi = next;
    }
    return phi;
}

} // namespace

FormulaPtr minimize_separating(FormulaPtr phi, const LabelledGraph& a, const LabelledGraph& b) {
    return minimize_separating_impl(std::move(phi), a, b);
}

DistinguishResult distinguishing_graph(const Graph& g, const Graph& h, int k, int q) {
    DistinguishResult res;
    if (g.n() != h.n()) {
        res.status = DistinguishResult::Status::Found;
        res.witness = Graph(1);
        res.note = "vertex counts differ; the single vertex distinguishes";
        return res;
    }
    if (ckq_equivalent(g, h, k, q)) {
        res.status = DistinguishResult::Status::EquivalentByGame;
        res.note = "Duplicator wins the bijective game";
        return res;
    }
    SentenceSeparation sep = ckq_sentence_equivalence(g, h, k, q);
    if (sep.equivalent || !sep.sentence) {
        res.note = "sentence search exhausted";
        return res;
    }
    FormulaPtr phi = sep.sentence;
    LabelledGraph lg(g, 0), lh(h, 0);
    bool on_g = evaluate(phi, lg);
    bool on_h = evaluate(phi, lh);
    if (on_g == on_h) {
        res.note = "refinement produced a non-separating sentence";
        return res;
    }
    if (!on_g) phi = f_not(phi);
    phi = minimize_separating_impl(phi, lg, lh);
    if (!evaluate(phi, lg)) phi = f_not(phi);
    try {
        QuantumGraph qg = synth_qg_impl(phi, g.n(), k, q, false, 5000);
        for (const auto& t : qg.terms()) {
            Graph cand = t.graph.graph();
            if (!(hom_count(cand, g) == hom_count(cand, h))) {
                res.status = DistinguishResult::Status::Found;
                res.witness = cand;
                res.sentence = phi;
                return res;
            }
        }
        res.note = "no single term separates (unexpected)";
        return res;
    } catch (const CapabilityError&) {
        // the expansion outgrew the budget; fall back to scanning the class
        // members directly for a hom difference
        for (int size = 1; size <= limits().enumerate_max_n; ++size) {
            for (const auto& f : enumerate_class(size, k, q)) {
                if (f.n() != size) continue;
                if (!(hom_count(f, g) == hom_count(f, h))) {
                    res.status = DistinguishResult::Status::Found;
                    res.witness = f;
                    res.sentence = phi;
                    res.note = "witness found by direct class scan";
                    return res;
                }
            }
        }
        res.note = "sentence expansion exceeded budget and the class scan is exhausted";
        return res;
    }
}

} // namespace homind
