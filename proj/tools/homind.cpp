// homind: command-line front end for the homomorphism-indistinguishability
// toolkit. Exit status: 0 success / positive verdict, 1 negative verdict,
// 2 usage or input errors, 3 desk-scale capability limits.

#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "homind/accept.hpp"
#include "homind/canonical.hpp"
#include "homind/cfi.hpp"
#include "homind/codec.hpp"
#include "homind/decomp.hpp"
#include "homind/games.hpp"
#include "homind/hom.hpp"
#include "homind/logic.hpp"
#include "homind/parallel.hpp"
#include "homind/quantum.hpp"

using namespace homind;

namespace {

int exit_negative = 1;
int exit_usage = 2;
int exit_capability = 3;

std::string slurp_or_literal(const std::string& arg) {
    std::ifstream in(arg);
    if (in) {
        std::stringstream ss;
        ss << in.rdbuf();
        return ss.str();
    }
    return arg;
}

std::vector<int> mask_vertices(Mask m, int n) {
    std::vector<int> out;
    for (int v = 0; v < n; ++v)
        if ((m >> v) & 1) out.push_back(v);
    return out;
}

void emit_graph(const LabelledGraph& g, const std::string& format, std::ostream& os) {
    os << (format == "json" ? encode_graph_json(g) : encode_graph(g)) << "\n";
}

struct Options {
    std::string format = "text";
    int threads = 0;
};

int run(int argc, char** argv) {
    CLI::App app{"homomorphism indistinguishability toolkit"};
    app.require_subcommand(1);
    Options opt;
    app.add_option("--format", opt.format, "output format: text or json")
        ->check(CLI::IsMember({"text", "json"}));
    app.add_option("--threads", opt.threads, "worker threads (default: all cores)");

    // hom
    std::string hom_from, hom_to;
    int hom_profile_label = 0;
    auto* hom_cmd = app.add_subcommand("hom", "count homomorphisms between graph files");
    hom_cmd->add_option("--from", hom_from, "pattern graph file")->required();
    hom_cmd->add_option("--to", hom_to, "target graph file")->required();
    hom_cmd->add_option("--profile", hom_profile_label,
                        "emit the per-vertex profile for this label instead");

    // decomp
    std::string decomp_graph, decomp_emit, decomp_method = "search", decomp_out;
    int decomp_k = 0, decomp_q = 0;
    bool decomp_guarded = false;
    auto* decomp_cmd = app.add_subcommand("decomp", "decide class membership and emit witnesses");
    decomp_cmd->add_option("--graph", decomp_graph)->required();
    decomp_cmd->add_option("--k", decomp_k, "pebble count (0 = unbounded)");
    decomp_cmd->add_option("--q", decomp_q, "depth bound (0 = unbounded)");
    decomp_cmd->add_flag("--guarded", decomp_guarded, "guarded membership (needs labels)");
    decomp_cmd->add_option("--emit", decomp_emit, "witness kind: td, pfc or ctree")
        ->check(CLI::IsMember({"td", "pfc", "ctree"}));
    decomp_cmd->add_option("--method", decomp_method)->check(CLI::IsMember({"search", "game"}));
    decomp_cmd->add_option("--out", decomp_out, "write the witness here instead of stdout");

    // game
    std::string game_graph, game_emit;
    int game_k = 0, game_q = 0;
    bool game_monotone = false;
    auto* game_cmd = app.add_subcommand("game", "solve the round-bounded pursuit game");
    game_cmd->add_option("--graph", game_graph)->required();
    game_cmd->add_option("--k", game_k)->required();
    game_cmd->add_option("--q", game_q)->required();
    game_cmd->add_flag("--monotone", game_monotone);
    game_cmd->add_option("--emit", game_emit, "strategy or transcript")
        ->check(CLI::IsMember({"strategy", "transcript"}));

    // equiv
    std::string equiv_a, equiv_b;
    int equiv_k = 0, equiv_q = 0, equiv_max_f = 5;
    bool equiv_gc = false;
    auto* equiv_cmd = app.add_subcommand("equiv", "equivalence via the bijective pebble game");
    equiv_cmd->add_option("--a", equiv_a)->required();
    equiv_cmd->add_option("--b", equiv_b)->required();
    equiv_cmd->add_option("--k", equiv_k)->required();
    equiv_cmd->add_option("--q", equiv_q)->required();
    equiv_cmd->add_flag("--gc", equiv_gc, "also run the bounded guarded certificate");
    equiv_cmd->add_option("--max-f", equiv_max_f, "guarded enumeration bound");

    // logic
    auto* logic_cmd = app.add_subcommand("logic", "formula evaluation and the two translations");
    logic_cmd->require_subcommand(1);
    std::string le_formula, le_graph;
    auto* logic_eval = logic_cmd->add_subcommand("eval", "evaluate a formula on a labelled graph");
    logic_eval->add_option("--formula", le_formula)->required();
    logic_eval->add_option("--graph", le_graph)->required();
    std::string lsf_graph;
    std::uint64_t lsf_m = 0;
    int lsf_k = 0, lsf_q = 0, lsf_maxn = 4;
    bool lsf_guarded = false;
    auto* logic_sf = logic_cmd->add_subcommand("synth-formula",
                                               "formula family member phi_m for a class graph");
    logic_sf->add_option("--graph", lsf_graph)->required();
    logic_sf->add_option("--m", lsf_m)->required();
    logic_sf->add_option("--k", lsf_k)->required();
    logic_sf->add_option("--q", lsf_q)->required();
    logic_sf->add_option("--max-n", lsf_maxn, "target graph size bound");
    logic_sf->add_flag("--guarded", lsf_guarded);
    std::string lsq_formula;
    int lsq_n = 0, lsq_k = 0, lsq_q = 0;
    bool lsq_guarded = false;
    auto* logic_sq = logic_cmd->add_subcommand("synth-qg", "quantum graph modelling a formula");
    logic_sq->add_option("--formula", lsq_formula)->required();
    logic_sq->add_option("--n", lsq_n)->required();
    logic_sq->add_option("--k", lsq_k)->required();
    logic_sq->add_option("--q", lsq_q)->required();
    logic_sq->add_flag("--guarded", lsq_guarded);
    std::string ld_a, ld_b;
    int ld_k = 0, ld_q = 0;
    auto* logic_dist = logic_cmd->add_subcommand("distinguish",
                                                 "find a class graph with differing hom counts");
    logic_dist->add_option("--a", ld_a)->required();
    logic_dist->add_option("--b", ld_b)->required();
    logic_dist->add_option("--k", ld_k)->required();
    logic_dist->add_option("--q", ld_q)->required();

    // cfi
    std::string cfi_base, cfi_twist;
    bool cfi_odd = false;
    auto* cfi_cmd = app.add_subcommand("cfi", "gadget graphs over a base graph");
    cfi_cmd->add_option("--base", cfi_base)->required();
    cfi_cmd->add_flag("--odd", cfi_odd, "emit the odd companion instead of the even one");
    cfi_cmd->add_option("--twist", cfi_twist, "u,v: emit the twist isomorphism along a path");

    // enumerate
    int en_n = 0, en_k = 0, en_q = 0;
    bool en_guarded = false;
    auto* en_cmd = app.add_subcommand("enumerate", "class members up to isomorphism");
    en_cmd->add_option("--n", en_n)->required();
    en_cmd->add_option("--k", en_k)->required();
    en_cmd->add_option("--q", en_q)->required();
    en_cmd->add_flag("--guarded", en_guarded);

    // accept
    auto* accept_cmd = app.add_subcommand("accept", "run the acceptance suite");

    CLI11_PARSE(app, argc, argv);
    set_thread_count(opt.threads);

    if (hom_cmd->parsed()) {
        LabelledGraph f = read_graph_file(hom_from);
        LabelledGraph g = read_graph_file(hom_to);
        if (hom_profile_label > 0) {
            auto prof = hom_profile(f, g, hom_profile_label);
            if (opt.format == "json") {
                nlohmann::ordered_json j = nlohmann::ordered_json::array();
                for (auto& x : prof) j.push_back(x.to_string());
                std::cout << j.dump() << "\n";
            } else {
                for (std::size_t i = 0; i < prof.size(); ++i)
                    std::cout << (i ? " " : "") << prof[i].to_string();
                std::cout << "\n";
            }
            return 0;
        }
        BigUint n = hom_count(f, g);
        std::cout << n.to_string() << "\n";
        return 0;
    }

    if (decomp_cmd->parsed()) {
        LabelledGraph g = read_graph_file(decomp_graph);
        std::optional<int> k = decomp_k > 0 ? std::optional<int>(decomp_k) : std::nullopt;
        std::optional<int> q = decomp_q > 0 ? std::optional<int>(decomp_q) : std::nullopt;
        bool member;
        std::optional<DecompositionWitness> witness;
        if (decomp_guarded) {
            if (!k || !q) throw ValidationError("guarded membership needs --k and --q");
            member = min_ctree_elim_depth(g, *k, true) <= *q;
            if (member) witness = build_ctree_witness(g, *k, true);
        } else {
            auto res = decide_membership(g.graph(), k, q,
                                         decomp_method == "game" ? MembershipMethod::Game
                                                                 : MembershipMethod::Search);
            member = res.member;
            witness = res.witness;
        }
        std::cout << (member ? "member" : "not a member") << "\n";
        if (member && !decomp_emit.empty() && witness) {
            WitnessKind kind = decomp_emit == "td"    ? WitnessKind::Td
                               : decomp_emit == "pfc" ? WitnessKind::Pfc
                                                      : WitnessKind::Ctree;
            DecompositionWitness w =
                decomp_guarded ? *witness : convert(g.graph(), *witness, kind);
            std::string payload = encode_witness_json(w);
            if (decomp_out.empty()) std::cout << payload << "\n";
            else std::ofstream(decomp_out) << payload << "\n";
        }
        return member ? 0 : exit_negative;
    }

    if (game_cmd->parsed()) {
        LabelledGraph g = read_graph_file(game_graph);
        auto sol = solve_cr(g.graph(), game_k, game_q, game_monotone);
        std::cout << (sol.cops_win ? "Cops win" : "Robber wins") << "\n";
        if (game_emit == "strategy") {
            nlohmann::ordered_json j;
            j["k"] = sol.k;
            j["q"] = sol.q;
            j["monotone"] = sol.monotone;
            j["cops_win"] = sol.cops_win;
            j["moves"] = nlohmann::ordered_json::array();
            for (auto& [state, next] : sol.cop_moves) {
                nlohmann::ordered_json jm;
                jm["cops"] = mask_vertices(state.cops, g.n());
                jm["component"] = mask_vertices(state.component, g.n());
                jm["rounds_left"] = state.rounds_left;
                jm["next"] = mask_vertices(next, g.n());
                j["moves"].push_back(jm);
            }
            std::cout << j.dump() << "\n";
        } else if (game_emit == "transcript") {
            Outcome o = simulate_optimal(g.graph(), game_k, game_q, game_monotone);
            int round = 1;
            for (auto& tr : o.transcript) {
                std::cout << "round " << round++ << ": cops ";
                for (int v : mask_vertices(tr.cops_after, g.n())) std::cout << v << " ";
                std::cout << "| robber ";
                if (tr.capture) std::cout << "captured";
                else
                    for (int v : mask_vertices(tr.robber_after, g.n())) std::cout << v << " ";
                std::cout << "\n";
            }
        }
        return sol.cops_win ? 0 : exit_negative;
    }

    if (equiv_cmd->parsed()) {
        Graph a = read_graph_file(equiv_a).graph();
        Graph b = read_graph_file(equiv_b).graph();
        auto rep = equivalence_suite(a, b, equiv_k, equiv_q,
                                     equiv_gc ? std::optional<int>(equiv_max_f) : std::nullopt);
        if (opt.format == "json") {
            nlohmann::ordered_json j;
            j["ckq_equivalent"] = rep.ckq;
            j["cq_equivalent"] = rep.cq;
            if (rep.gc) {
                j["gc_consistent_up_to_bound"] = rep.gc->consistent;
                j["gc_detail"] = rep.gc->detail;
                if (rep.gc->witness) j["gc_witness"] = encode_graph(*rep.gc->witness);
            }
            std::cout << j.dump() << "\n";
        } else {
            std::cout << "C^k_q equivalent: " << (rep.ckq ? "yes" : "no") << "\n";
            std::cout << "C_q equivalent: " << (rep.cq ? "yes" : "no") << "\n";
            if (rep.gc) {
                std::cout << "guarded (bounded): "
                          << (rep.gc->consistent ? "consistent" : "distinguished") << " — "
                          << rep.gc->detail << "\n";
                if (rep.gc->witness)
                    std::cout << "guarded witness: " << encode_graph(*rep.gc->witness) << "\n";
            }
        }
        return rep.ckq ? 0 : exit_negative;
    }

    if (logic_eval->parsed()) {
        FormulaPtr f = parse_formula(slurp_or_literal(le_formula));
        LabelledGraph g = read_graph_file(le_graph);
        bool models = evaluate(f, g);
        std::cout << (models ? "true" : "false") << "\n";
        return models ? 0 : exit_negative;
    }
    if (logic_sf->parsed()) {
        LabelledGraph f = read_graph_file(lsf_graph);
        if (f.arity() < lsf_k) f.set_arity(lsf_k);
        ConstructionTree ct = build_ctree_witness(f, lsf_k, lsf_guarded);
        if (ct.elimination_depth() > lsf_q)
            throw CapabilityError("graph needs elimination depth " +
                                  std::to_string(ct.elimination_depth()));
        FormulaPtr phi = synth_formula(f, ct, lsf_m, lsf_guarded, lsf_maxn);
        std::cout << (opt.format == "json" ? formula_to_json(phi) : formula_to_sexpr(phi))
                  << "\n";
        return 0;
    }
    if (logic_sq->parsed()) {
        FormulaPtr f = parse_formula(slurp_or_literal(lsq_formula));
        QuantumGraph qg = synth_qg(f, lsq_n, lsq_k, lsq_q, lsq_guarded);
        std::cout << encode_quantum_json(qg) << "\n";
        return 0;
    }
    if (logic_dist->parsed()) {
        Graph a = read_graph_file(ld_a).graph();
        Graph b = read_graph_file(ld_b).graph();
        auto res = distinguishing_graph(a, b, ld_k, ld_q);
        switch (res.status) {
            case DistinguishResult::Status::Found:
                std::cout << "distinguishing graph: "
                          << encode_graph(LabelledGraph(res.witness, 0)) << "\n";
                if (res.sentence)
                    std::cout << "sentence: " << formula_to_sexpr(res.sentence) << "\n";
                return 0;
            case DistinguishResult::Status::EquivalentByGame:
                std::cout << "inconclusive-by-equivalence\n";
                return exit_negative;
            default: std::cout << "inconclusive: " << res.note << "\n"; return exit_negative;
        }
    }

    if (cfi_cmd->parsed()) {
        Graph base = read_graph_file(cfi_base).graph();
        if (!cfi_twist.empty()) {
            auto comma = cfi_twist.find(',');
            if (comma == std::string::npos)
                throw ValidationError("--twist expects u,v");
            int u = std::stoi(cfi_twist.substr(0, comma));
            int v = std::stoi(cfi_twist.substr(comma + 1));
            // shortest path from u to v
            std::vector<int> prev(base.n(), -1);
            std::vector<int> queue{u};
            prev[u] = u;
            for (std::size_t i = 0; i < queue.size(); ++i)
                for (int w : base.neighbours(queue[i]))
                    if (prev[w] < 0) {
                        prev[w] = queue[i];
                        queue.push_back(w);
                    }
            if (prev[v] < 0) throw ValidationError("no path between the twist vertices");
            std::vector<int> path{v};
            while (path.back() != u) path.push_back(prev[path.back()]);
            std::reverse(path.begin(), path.end());
            auto iso = twist_iso(base, u, v, path);
            nlohmann::ordered_json j = nlohmann::ordered_json::array();
            for (int x : iso) j.push_back(x);
            std::cout << j.dump() << "\n";
            return 0;
        }
        auto [even, odd] = cfi_pair(base);
        emit_graph(LabelledGraph(cfi_odd ? odd.graph : even.graph, 0), opt.format, std::cout);
        return 0;
    }

    if (en_cmd->parsed()) {
        for (const auto& g : enumerate_class(en_n, en_k, en_q, en_guarded))
            emit_graph(LabelledGraph(g, 0), opt.format, std::cout);
        return 0;
    }

    if (accept_cmd->parsed()) {
        auto results = run_acceptance(&std::cout);
        bool all = true;
        for (auto& r : results) all = all && r.pass;
        std::cout << (all ? "all criteria passed" : "ACCEPTANCE FAILURES PRESENT") << "\n";
        return all ? 0 : exit_negative;
    }

    return exit_usage;
}

} // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const CapabilityError& e) {
        std::cerr << "capability: " << e.what() << "\n";
        return exit_capability;
    } catch (const ParseError& e) {
        std::cerr << "parse: " << e.what() << "\n";
        return exit_usage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_usage;
    }
}
