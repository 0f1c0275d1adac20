#pragma once

// Round-bounded cops-and-robber games on G plus a parked k-clique, in the
// monotone and unrestricted variants; strategy extraction into tree
// decompositions; the scripted grid and path strategies; the bijective
// pebble game; and the equivalence front-end.

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "homind/decomp.hpp"
#include "homind/graph.hpp"

namespace homind {

constexpr int kNoCapture = 1 << 27;

// cop positions restricted to V(G) as a bitmask; parked cops are implicit
using Mask = std::uint64_t;

struct CrState {
    Mask cops = 0;
    Mask component = 0;
    int rounds_left = 0;
    auto operator<=>(const CrState&) const = default;
};

struct CrSolution {
    bool cops_win = false;
    int k = 0, q = 0;
    bool monotone = true;
    // winning cop move for every winning state reached by the solver
    std::map<CrState, Mask> cop_moves;
};

CrSolution solve_cr(const Graph& g, int k, int q, bool monotone);

// strategy tree of a monotone cops win, read off as a tree decomposition of
// width <= k-1 and depth <= q
TreeDecomposition strategy_to_td(const Graph& g, const CrSolution& sol);

// deterministic cop scripts; clone() lets game search branch over robber replies
class CopScript {
  public:
    virtual ~CopScript() = default;
    virtual Mask next(const Graph& g, Mask cops, Mask robber_component, int round) = 0;
    virtual std::unique_ptr<CopScript> clone() const = 0;
};

std::unique_ptr<CopScript> make_cop_diagonal_sweep(int h, int l);
std::unique_ptr<CopScript> make_cop_binary_split(int path_len);

// the robber policy from the grid lower bound: move to the component with
// the most vertices, ties to the smallest vertex index
Mask robber_largest_component(const std::vector<Mask>& choices);

enum class Winner { Cops, Robber };

struct TranscriptRound {
    Mask cops_before, cops_after;
    Mask robber_before, robber_after; // components
    bool capture = false;
};

struct Outcome {
    Winner winner;
    int rounds = 0; // rounds played until capture, or q if the robber survives
    std::vector<TranscriptRound> transcript;
};

// scripted cops against an exhaustive adversarial robber; validates every
// scripted move against the game rules and reports the worst line
Outcome simulate_script_vs_adversarial_robber(const Graph& g, const CopScript& script, int k,
                                              int q, bool monotone);

// optimal (search) cops against the largest-component robber script
Outcome simulate_adversarial_cops_vs_largest_component(const Graph& g, int k, int q,
                                                       bool monotone);

// both sides optimal, principal line
Outcome simulate_optimal(const Graph& g, int k, int q, bool monotone);

enum class PebbleWinner { Duplicator, Spoiler };

// position = multiset of pebble pairs (g-vertex, h-vertex), at most k of them
PebbleWinner bijective_pebble_game(const Graph& g, const Graph& h, int k, int q,
                                   std::vector<std::pair<int, int>> gamma0 = {});

bool ckq_equivalent(const Graph& g, const Graph& h, int k, int q);
bool cq_equivalent(const Graph& g, const Graph& h, int q);

struct GcBoundedResult {
    bool consistent = true;                // up to the enumeration bound
    std::optional<LabelledGraph> witness;  // one-labelled distinguisher when found
    std::string detail;
};

// bounded guarded-equivalence certificate: profile classes over the guarded
// one-labelled members with at most max_f vertices must be in bijection
GcBoundedResult gc_equivalent_bounded(const Graph& g, const Graph& h, int k, int q, int max_f);

struct EquivalenceReport {
    bool ckq = false;
    bool cq = false;
    std::optional<GcBoundedResult> gc;
};

EquivalenceReport equivalence_suite(const Graph& g, const Graph& h, int k, int q,
                                    std::optional<int> gc_max_f = std::nullopt);

} // namespace homind
