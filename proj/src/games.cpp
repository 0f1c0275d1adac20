#include "homind/games.hpp"

#include <algorithm>
#include <bit>
#include <map>
#include <set>

#include "homind/hom.hpp"

namespace homind {

namespace {

int popcount(Mask m) { return std::popcount(m); }

std::vector<Mask> components_within(const Graph& g, Mask allowed) {
    std::vector<Mask> out;
    Mask seen = 0;
    for (int s = 0; s < g.n(); ++s) {
        if (!((allowed >> s) & 1) || ((seen >> s) & 1)) continue;
        Mask comp = 0;
        std::vector<int> stack{s};
        comp |= 1ull << s;
        while (!stack.empty()) {
            int v = stack.back();
            stack.pop_back();
            for (int w : g.neighbours(v))
                if (((allowed >> w) & 1) && !((comp >> w) & 1)) {
                    comp |= 1ull << w;
                    stack.push_back(w);
                }
        }
        seen |= comp;
        out.push_back(comp);
    }
    return out;
}

// component of `from` in G minus `removed`
Mask reach(const Graph& g, Mask from, Mask removed) {
    Mask comp = from & ~removed;
    std::vector<int> stack;
    for (int v = 0; v < g.n(); ++v)
        if ((comp >> v) & 1) stack.push_back(v);
    while (!stack.empty()) {
        int v = stack.back();
        stack.pop_back();
        for (int w : g.neighbours(v))
            if (!((removed >> w) & 1) && !((comp >> w) & 1)) {
                comp |= 1ull << w;
                stack.push_back(w);
            }
    }
    return comp;
}

struct CrSolver {
    const Graph& g;
    int k;
    bool monotone;
    std::map<CrState, bool> memo;
    std::map<CrState, Mask> moves;

    // legal successor cop sets together with the robber's reachable space
    std::vector<std::pair<Mask, Mask>> successors(Mask cops, Mask comp) const {
        std::vector<std::pair<Mask, Mask>> out;
        int parked = k - popcount(cops);
        auto add_move = [&](Mask next, Mask reachable) { out.emplace_back(next, reachable); };
        // place a parked cop
        if (parked > 0) {
            for (int b = 0; b < g.n(); ++b) {
                if ((cops >> b) & 1) continue;
                bool inside = (comp >> b) & 1;
                if (monotone && !inside) continue;
                add_move(cops | (1ull << b), comp);
            }
        }
        // lift a cop
        for (int a = 0; a < g.n(); ++a) {
            if (!((cops >> a) & 1)) continue;
            Mask rest = cops & ~(1ull << a);
            Mask r = reach(g, comp, rest);
            if (monotone && r != comp) continue;
            add_move(rest, r);
            // or relocate it in the same round
            for (int b = 0; b < g.n(); ++b) {
                if (b == a || ((rest >> b) & 1)) continue;
                if (monotone && !((comp >> b) & 1)) continue;
                add_move(rest | (1ull << b), r);
            }
        }
        return out;
    }

    bool cops_win(Mask cops, Mask comp, int r) {
        if (r <= 0) return false;
        CrState key{cops, comp, r};
        if (auto it = memo.find(key); it != memo.end()) return it->second;
        memo[key] = false; // in-progress states count as robber wins
        bool win = false;
        Mask winning_move = 0;
        for (auto [next, reachable] : successors(cops, comp)) {
            Mask escape = reachable & ~next;
            if (escape == 0) {
                win = true;
                winning_move = next;
                break;
            }
            bool all = true;
            for (Mask child : components_within(g, escape))
                if (!cops_win(next, child, r - 1)) {
                    all = false;
                    break;
                }
            if (all) {
                win = true;
                winning_move = next;
                break;
            }
        }
        memo[key] = win;
        if (win) moves[key] = winning_move;
        return win;
    }
};

} // namespace

CrSolution solve_cr(const Graph& g, int k, int q, bool monotone) {
    if (g.n() > limits().game_max_n)
        throw CapabilityError("game solver capped at n = " + std::to_string(limits().game_max_n));
    if (k < 1 || q < 0) throw ValidationError("solve_cr needs k >= 1 and q >= 0");
    CrSolution sol;
    sol.k = k;
    sol.q = q;
    sol.monotone = monotone;
    CrSolver solver{g, k, monotone, {}, {}};
    bool win = true;
    for (Mask comp : components_within(g, g.n() >= 64 ? ~0ull : (1ull << g.n()) - 1))
        if (!solver.cops_win(0, comp, q)) win = false;
    sol.cops_win = win;
    sol.cop_moves = std::move(solver.moves);
    return sol;
}

TreeDecomposition strategy_to_td(const Graph& g, const CrSolution& sol) {
    if (!sol.cops_win || !sol.monotone)
        throw ValidationError("strategy_to_td needs a monotone cops win");
    TreeDecomposition td;
    td.root = 0;
    td.parent.push_back(-1);
    td.bags.push_back({});
    auto rec = [&](auto&& self, Mask cops, Mask comp, int r, int parent) -> void {
        auto it = sol.cop_moves.find(CrState{cops, comp, r});
        if (it == sol.cop_moves.end())
            throw ValidationError("strategy table incomplete at a reachable state");
        Mask next = it->second;
        int me = td.node_count();
        td.parent.push_back(parent);
        std::vector<int> bag;
        for (int v = 0; v < g.n(); ++v)
            if ((next >> v) & 1) bag.push_back(v);
        td.bags.push_back(std::move(bag));
        Mask escape = comp & ~next; // monotone: reachable space is the component
        for (Mask child : components_within(g, escape)) self(self, next, child, r - 1, me);
    };
    Mask all = g.n() >= 64 ? ~0ull : (1ull << g.n()) - 1;
    for (Mask comp : components_within(g, all)) rec(rec, 0, comp, sol.q, 0);
    return td;
}

// ---- scripted strategies ----

namespace {

// capture a robber stuck on a singleton component: land a parked cop on him,
// or move a cop that is not next to him; with k > deg(v) one always exists
std::optional<Mask> singleton_capture(const Graph& g, int k, Mask cops, Mask comp) {
    if (popcount(comp) != 1) return std::nullopt;
    int v = std::countr_zero(comp);
    if (popcount(cops) < k) return cops | (1ull << v);
    for (int a = 0; a < g.n(); ++a) {
        if (!((cops >> a) & 1) || a == v) continue;
        if (g.has_edge(a, v)) continue;
        return (cops & ~(1ull << a)) | (1ull << v);
    }
    return std::nullopt;
}

class DiagonalSweep final : public CopScript {
  public:
    DiagonalSweep(int h, int l, int k) : h_(h), l_(l), k_(k) {
        if (h < 2 || l <= h) throw ValidationError("diagonal sweep needs a wide grid");
        c0_ = l / 2 - h / 2;
    }

    std::unique_ptr<CopScript> clone() const override {
        return std::make_unique<DiagonalSweep>(*this);
    }

    Mask next(const Graph& g, Mask cops, Mask comp, int) override {
        if (auto cap = singleton_capture(g, k_, cops, comp)) return *cap;
        if (phase_ == Phase::PlaceDiag) {
            ++placed_;
            Mask nxt = cops | bit(placed_, c0_ + placed_);
            if (placed_ == h_) phase_ = Phase::Decide;
            return nxt;
        }
        if (phase_ == Phase::Decide) {
            // the diagonal separates the grid; mirror when the robber sits in
            // the upper-right part
            mirrored_ = (comp >> vid(1, l_)) & 1;
            phase_ = Phase::Fix;
        }
        if (phase_ == Phase::Fix) {
            // odd parameters: the mirrored diagonal may differ from the one
            // placed; re-place mismatched cops one per round
            Mask want = 0;
            for (int i = 1; i <= h_; ++i) want |= bit(i, c0_ + i);
            Mask misplaced = cops & ~want;
            Mask missing = want & ~cops;
            if (misplaced) {
                int a = std::countr_zero(misplaced);
                int b = std::countr_zero(missing);
                return (cops & ~(1ull << a)) | (1ull << b);
            }
            phase_ = Phase::Extra;
        }
        if (phase_ == Phase::Extra) {
            phase_ = Phase::Sweep;
            i_ = h_;
            j_ = c0_ + 1;
            return cops | bit(h_, c0_ + h_ - 2);
        }
        // sweep: move the cop at (i, j+i-1) one diagonal step down-left
        Mask from = bit(i_, j_ + i_ - 1);
        Mask to;
        if (i_ > 1) {
            to = bit(i_ - 1, std::max(1, j_ + i_ - 4));
            i_ -= 1;
        } else {
            to = bit(h_, j_ + h_ - 5);
            i_ = h_;
            j_ -= 2;
        }
        if (!(cops & from) || (cops & to))
            throw ValidationError("diagonal sweep lost its pattern");
        return (cops & ~from) | to;
    }

  private:
    // paper coordinates are 1-based (row, column), mirrored by the point
    // reflection when the robber started on the other side
    int vid(int i, int j) const {
        if (mirrored_) {
            i = h_ + 1 - i;
            j = l_ + 1 - j;
        }
        return (i - 1) * l_ + (j - 1);
    }
    Mask bit(int i, int j) const { return 1ull << vid(i, j); }

    enum class Phase { PlaceDiag, Decide, Fix, Extra, Sweep };
    int h_, l_, k_, c0_;
    Phase phase_ = Phase::PlaceDiag;
    int placed_ = 0;
    bool mirrored_ = false;
    int i_ = 0, j_ = 0;
};

class PathSplit final : public CopScript {
  public:
    explicit PathSplit(int len) : l_(len) {
        if (len < 1) throw ValidationError("path split needs a path");
    }

    std::unique_ptr<CopScript> clone() const override { return std::make_unique<PathSplit>(*this); }

    Mask next(const Graph& g, Mask cops, Mask comp, int) override {
        if (auto cap = singleton_capture(g, 2, cops, comp)) return *cap;
        if (cops == 0) return 1ull << ((l_ - 1) / 2);
        // the robber's interval is [a..b]; walk a cop pair toward it
        int a = std::countr_zero(comp);
        int b = 63 - std::countl_zero(comp);
        if (popcount(cops) == 1) {
            int c = std::countr_zero(cops);
            int target = b < c ? b : a;
            return cops | (1ull << target);
        }
        // pair {c, c+1} with the interval on one side; lift the far cop two
        // steps past the near one
        int c1 = std::countr_zero(cops);
        Mask rest = cops & ~(1ull << c1);
        int c2 = std::countr_zero(rest);
        int lo = std::min(c1, c2), hi = std::max(c1, c2);
        if (a > hi) // interval right of the pair
            return (cops & ~(1ull << lo)) | (1ull << (hi + 1));
        return (cops & ~(1ull << hi)) | (1ull << (lo - 1));
    }

  private:
    int l_;
};

} // namespace

std::unique_ptr<CopScript> make_cop_diagonal_sweep(int h, int l) {
    return std::make_unique<DiagonalSweep>(h, l, h + 1);
}

std::unique_ptr<CopScript> make_cop_binary_split(int path_len) {
    return std::make_unique<PathSplit>(path_len);
}

Mask robber_largest_component(const std::vector<Mask>& choices) {
    Mask best = 0;
    int best_size = -1, best_min = 1 << 30;
    for (Mask c : choices) {
        int size = popcount(c);
        int mn = c ? std::countr_zero(c) : 1 << 30;
        if (size > best_size || (size == best_size && mn < best_min)) {
            best = c;
            best_size = size;
            best_min = mn;
        }
    }
    return best;
}

// ---- simulation ----

namespace {

void check_move_legal(const Graph& g, int k, bool monotone, Mask cops, Mask comp, Mask next) {
    int on_field_before = popcount(cops);
    int on_field_after = popcount(next);
    if (on_field_after > k) throw ValidationError("illegal move: more than k cops placed");
    Mask stay = cops & next;
    if (cops == next) {
        // a pass only exists as a hop between clique vertices
        if (on_field_before < 1 || on_field_before > k - 1)
            throw ValidationError("illegal move: |X_i cap X_{i+1}| = k-1 violated");
    } else {
        // exactly one cop moves per round; parked cops make up the difference
        int moved = popcount(cops & ~next) + std::max(0, on_field_after - on_field_before);
        if (popcount(cops ^ next) > 2 || moved != 1)
            throw ValidationError("illegal move: |X_i cap X_{i+1}| = k-1 violated");
    }
    if (monotone) {
        Mask reachable = reach(g, comp, stay);
        if (reachable != comp)
            throw ValidationError(
                "illegal move: monotonicity violated (the escape space grew)");
    }
}

struct ScriptGame {
    const Graph& g;
    int k, q;
    bool monotone;

    // worst capture round over all robber replies, or kNoCapture
    int adversarial_robber(const CopScript& script, Mask cops, Mask comp, int round,
                           std::vector<TranscriptRound>* line) {
        if (round > q) return kNoCapture;
        auto my_script = script.clone();
        Mask next = my_script->next(g, cops, comp, round);
        check_move_legal(g, k, monotone, cops, comp, next);
        Mask reachable = reach(g, comp, cops & next);
        Mask escape = reachable & ~next;
        TranscriptRound tr{cops, next, comp, 0, false};
        if (escape == 0) {
            tr.capture = true;
            if (line) line->push_back(tr);
            return round;
        }
        int worst = -1;
        Mask worst_choice = 0;
        std::vector<TranscriptRound> worst_line;
        for (Mask child : components_within(g, escape)) {
            std::vector<TranscriptRound> sub;
            int r = adversarial_robber(*my_script, next, child, round + 1, line ? &sub : nullptr);
            if (r > worst) {
                worst = r;
                worst_choice = child;
                worst_line = std::move(sub);
            }
        }
        if (line) {
            tr.robber_after = worst_choice;
            line->push_back(tr);
            line->insert(line->end(), worst_line.begin(), worst_line.end());
        }
        return worst;
    }
};

struct PolicyGame {
    const Graph& g;
    int k, q;
    bool monotone;
    CrSolver helper;
    std::map<CrState, int> memo;

    // earliest capture round the cops can force against the fixed robber
    // policy, or kNoCapture
    int best_cops(Mask cops, Mask comp, int rounds_left) {
        if (rounds_left <= 0) return kNoCapture;
        CrState key{cops, comp, rounds_left};
        if (auto it = memo.find(key); it != memo.end()) return it->second;
        memo[key] = kNoCapture;
        int best = kNoCapture;
        for (auto [next, reachable] : helper.successors(cops, comp)) {
            Mask escape = reachable & ~next;
            if (escape == 0) {
                best = 1;
                break;
            }
            Mask chosen = robber_largest_component(components_within(g, escape));
            int sub = best_cops(next, chosen, rounds_left - 1);
            if (sub != kNoCapture) best = std::min(best, 1 + sub);
        }
        memo[key] = best;
        return best;
    }
};

} // namespace

Outcome simulate_script_vs_adversarial_robber(const Graph& g, const CopScript& script, int k,
                                              int q, bool monotone) {
    if (g.n() > limits().game_max_n)
        throw CapabilityError("game simulation capped at n = " +
                              std::to_string(limits().game_max_n));
    ScriptGame game{g, k, q, monotone};
    Mask all = g.n() >= 64 ? ~0ull : (1ull << g.n()) - 1;
    int worst = -1;
    std::vector<TranscriptRound> worst_line;
    for (Mask comp : components_within(g, all)) {
        std::vector<TranscriptRound> line;
        int r = game.adversarial_robber(script, 0, comp, 1, &line);
        if (r > worst) {
            worst = r;
            worst_line = std::move(line);
        }
    }
    Outcome out{worst == kNoCapture ? Winner::Robber : Winner::Cops,
                worst == kNoCapture ? q : worst, std::move(worst_line)};
    return out;
}

Outcome simulate_adversarial_cops_vs_largest_component(const Graph& g, int k, int q,
                                                       bool monotone) {
    if (g.n() > limits().game_max_n)
        throw CapabilityError("game simulation capped at n = " +
                              std::to_string(limits().game_max_n));
    PolicyGame game{g, k, q, monotone, CrSolver{g, k, monotone, {}, {}}, {}};
    Mask all = g.n() >= 64 ? ~0ull : (1ull << g.n()) - 1;
    // the robber also picks his starting component by the same policy
    Mask start = robber_largest_component(components_within(g, all));
    int r = game.best_cops(0, start, q);
    return Outcome{r == kNoCapture ? Winner::Robber : Winner::Cops, r == kNoCapture ? q : r, {}};
}

Outcome simulate_optimal(const Graph& g, int k, int q, bool monotone) {
    auto sol = solve_cr(g, k, q, monotone);
    Outcome out{sol.cops_win ? Winner::Cops : Winner::Robber, 0, {}};
    if (!sol.cops_win) {
        out.rounds = q;
        return out;
    }
    // principal line: cops follow the table, robber picks the reply that
    // survives longest
    CrSolver helper{g, k, monotone, {}, {}};
    Mask all = g.n() >= 64 ? ~0ull : (1ull << g.n()) - 1;
    int worst = 0;
    for (Mask comp0 : components_within(g, all)) {
        Mask cops = 0, comp = comp0;
        int r = sol.q;
        int played = 0;
        while (true) {
            auto it = sol.cop_moves.find(CrState{cops, comp, r});
            if (it == sol.cop_moves.end())
                throw ValidationError("strategy table incomplete during replay");
            Mask next = it->second;
            ++played;
            Mask reachable = reach(g, comp, cops & next);
            Mask escape = reachable & ~next;
            TranscriptRound tr{cops, next, comp, 0, escape == 0};
            if (escape == 0) {
                out.transcript.push_back(tr);
                break;
            }
            // principal line: the robber heads for the largest component
            Mask pick = robber_largest_component(components_within(g, escape));
            tr.robber_after = pick;
            out.transcript.push_back(tr);
            cops = next;
            comp = pick;
            --r;
        }
        worst = std::max(worst, played);
    }
    out.rounds = worst;
    return out;
}

// ---- bijective pebble game ----

namespace {

bool partial_isomorphism(const Graph& g, const Graph& h,
                         const std::vector<std::pair<int, int>>& pos) {
    for (std::size_t i = 0; i < pos.size(); ++i)
        for (std::size_t j = i + 1; j < pos.size(); ++j) {
            auto [gi, hi] = pos[i];
            auto [gj, hj] = pos[j];
            if ((gi == gj) != (hi == hj)) return false;
            if (g.has_edge(gi, gj) != h.has_edge(hi, hj)) return false;
        }
    return true;
}

struct PebbleGame {
    const Graph& g;
    const Graph& h;
    int k;
    std::map<std::pair<std::vector<std::pair<int, int>>, int>, bool> memo;

    static std::vector<std::pair<int, int>> normal(std::vector<std::pair<int, int>> pos) {
        std::sort(pos.begin(), pos.end());
        return pos;
    }

    bool duplicator_wins(std::vector<std::pair<int, int>> pos, int r) {
        pos = normal(std::move(pos));
        if (!partial_isomorphism(g, h, pos)) return false;
        if (r == 0) return true;
        if (g.n() != h.n()) return false;
        auto key = std::make_pair(pos, r);
        if (auto it = memo.find(key); it != memo.end()) return it->second;
        memo[key] = false;
        bool win = true;
        // spoiler slots: each distinct held pair, plus one fresh slot
        std::vector<std::vector<std::pair<int, int>>> bases;
        for (std::size_t i = 0; i < pos.size(); ++i) {
            if (i > 0 && pos[i] == pos[i - 1]) continue;
            auto base = pos;
            base.erase(base.begin() + static_cast<long>(i));
            bases.push_back(std::move(base));
        }
        if (static_cast<int>(pos.size()) < k) bases.push_back(pos);
        for (const auto& base : bases) {
            // duplicator needs a bijection whose every pair keeps her winning
            std::vector<std::vector<int>> adm(g.n());
            for (int v = 0; v < g.n(); ++v)
                for (int w = 0; w < h.n(); ++w) {
                    auto nxt = base;
                    nxt.emplace_back(v, w);
                    if (duplicator_wins(std::move(nxt), r - 1)) adm[v].push_back(w);
                }
            if (!has_perfect_matching(adm)) {
                win = false;
                break;
            }
        }
        memo[key] = win;
        return win;
    }

    // bipartite matching by augmenting paths
    static bool has_perfect_matching(const std::vector<std::vector<int>>& adm) {
        int n = static_cast<int>(adm.size());
        std::vector<int> match_w(n, -1);
        auto augment = [&](auto&& self, int v, std::vector<bool>& seen) -> bool {
            for (int w : adm[v]) {
                if (seen[w]) continue;
                seen[w] = true;
                if (match_w[w] < 0 || self(self, match_w[w], seen)) {
                    match_w[w] = v;
                    return true;
                }
            }
            return false;
        };
        for (int v = 0; v < n; ++v) {
            std::vector<bool> seen(n, false);
            if (!augment(augment, v, seen)) return false;
        }
        return true;
    }
};

} // namespace

PebbleWinner bijective_pebble_game(const Graph& g, const Graph& h, int k, int q,
                                   std::vector<std::pair<int, int>> gamma0) {
    if (k < 1) throw ValidationError("bijective game needs k >= 1");
    if (static_cast<int>(gamma0.size()) > k)
        throw ValidationError("initial position uses more than k pebbles");
    for (auto [v, w] : gamma0)
        if (v < 0 || v >= g.n() || w < 0 || w >= h.n())
            throw ValidationError("initial position off the graphs");
    PebbleGame game{g, h, k, {}};
    return game.duplicator_wins(std::move(gamma0), q) ? PebbleWinner::Duplicator
                                                      : PebbleWinner::Spoiler;
}

bool ckq_equivalent(const Graph& g, const Graph& h, int k, int q) {
    return bijective_pebble_game(g, h, k, q) == PebbleWinner::Duplicator;
}

bool cq_equivalent(const Graph& g, const Graph& h, int q) { return ckq_equivalent(g, h, q, q); }

GcBoundedResult gc_equivalent_bounded(const Graph& g, const Graph& h, int k, int q, int max_f) {
    GcBoundedResult res;
    auto battery = enumerate_guarded_one_labelled(max_f, k, q);
    // per-vertex profiles over the battery
    auto profiles = [&](const Graph& target) {
        std::vector<std::vector<std::string>> out(target.n());
        LabelledGraph tl(target, k >= 1 ? k : 1);
        for (int v = 0; v < target.n(); ++v) {
            LabelledGraph tv = with_label(tl, 1, v);
            for (const auto& f : battery) out[v].push_back(hom_count(f, tv).to_string());
        }
        return out;
    };
    auto pg = profiles(g);
    auto ph = profiles(h);
    // a single distinguisher first: label-summed counts differ
    for (std::size_t i = 0; i < battery.size(); ++i) {
        BigUint sg(0), sh(0);
        for (int v = 0; v < g.n(); ++v) sg += BigUint::from_string(pg[v][i]);
        for (int v = 0; v < h.n(); ++v) sh += BigUint::from_string(ph[v][i]);
        if (!(sg == sh)) {
            res.consistent = false;
            res.witness = battery[i];
            res.detail = "label-removed counts differ: " + sg.to_string() + " vs " + sh.to_string();
            return res;
        }
    }
    // otherwise the profile classes must match in size
    std::map<std::vector<std::string>, int> cg, ch;
    for (auto& p : pg) cg[p]++;
    for (auto& p : ph) ch[p]++;
    if (cg != ch) {
        res.consistent = false;
        res.detail = "profile class sizes differ over the guarded battery";
        return res;
    }
    res.detail = "profiles in bijection over " + std::to_string(battery.size()) +
                 " guarded one-labelled graphs";
    return res;
}

EquivalenceReport equivalence_suite(const Graph& g, const Graph& h, int k, int q,
                                    std::optional<int> gc_max_f) {
    EquivalenceReport rep;
    rep.ckq = ckq_equivalent(g, h, k, q);
    rep.cq = cq_equivalent(g, h, q);
    if (gc_max_f) rep.gc = gc_equivalent_bounded(g, h, k, q, *gc_max_f);
    return rep;
}

} // namespace homind
