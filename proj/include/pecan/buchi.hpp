#pragma once

#include "pecan/guard.hpp"

#include <chrono>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace pecan {

using StateId = std::uint32_t;

struct Edge {
    StateId target;
    Guard guard;
};

/// Nondeterministic Büchi automaton with state-based acceptance. Edges carry
/// guards over the automaton's ordered AP list; at most one edge exists per
/// (source, target) pair, and edges with unsatisfiable guards are dropped.
///
/// A freshly constructed automaton has a single non-accepting initial state
/// and no edges, so it accepts nothing.
class BuchiAutomaton {
public:
    explicit BuchiAutomaton(std::vector<std::string> aps = {});

    static BuchiAutomaton universal(std::vector<std::string> aps = {});
    static BuchiAutomaton empty(std::vector<std::string> aps = {}) { return BuchiAutomaton(std::move(aps)); }

    const std::vector<std::string>& aps() const { return aps_; }
    std::size_t num_aps() const { return aps_.size(); }
    std::size_t num_letters() const { return std::size_t{1} << aps_.size(); }
    /// Index of `ap` in aps(), if present.
    std::optional<std::size_t> ap_index(const std::string& ap) const;

    std::size_t num_states() const { return out_.size(); }
    std::size_t num_edges() const;
    StateId initial() const { return initial_; }
    void set_initial(StateId s);
    bool is_accepting(StateId s) const { return accepting_.at(s); }
    void set_accepting(StateId s, bool acc = true) { accepting_.at(s) = acc; }
    std::size_t num_accepting() const;

    StateId add_state(bool accepting = false);
    /// Adds letters of `g` to the edge from -> to (creating it if needed).
    void add_edge(StateId from, StateId to, const Guard& g);
    const std::vector<Edge>& edges(StateId s) const { return out_.at(s); }
    std::vector<Edge>& mutable_edges(StateId s) { return out_.at(s); }

    Guard guard_false() const { return Guard::none(num_aps()); }
    Guard guard_true() const { return Guard::all(num_aps()); }
    Guard guard_atom(const std::string& ap) const;
    /// Guard from a formula whose atoms index aps().
    Guard guard(const BoolExpr& e) const { return to_guard(e, num_aps()); }

    /// Successor set of `s` on `l`, in edge order.
    std::vector<StateId> successors(StateId s, Letter l) const;
    /// True iff every state has at most one successor per letter.
    bool is_deterministic() const;

private:
    std::vector<std::string> aps_;
    std::vector<std::vector<Edge>> out_;
    std::vector<bool> accepting_;
    StateId initial_ = 0;
};

/// AP valuation: the set of APs that are true. Missing APs read as false.
using Valuation = std::set<std::string>;

/// Ultimately periodic word prefix · cycle^ω.
struct LassoWord {
    std::vector<Valuation> prefix;
    std::vector<Valuation> cycle;

    friend bool operator==(const LassoWord&, const LassoWord&) = default;
};

Letter letter_of(const Valuation& v, const std::vector<std::string>& aps);
Valuation valuation_of(Letter l, const std::vector<std::string>& aps);

enum class ComplementMethod {
    Auto,        ///< dualize deterministic input, breakpoint for semi-deterministic, else determinize
    RankBased,   ///< tight level rankings
    Determinize  ///< via a deterministic parity automaton
};

struct ComplementOptions {
    std::size_t state_budget = 1'000'000;
    ComplementMethod method = ComplementMethod::Auto;
    std::optional<std::chrono::steady_clock::time_point> deadline;
};

/// L(a) ∩ L(b) over the union of the AP sets (APs matched by name).
BuchiAutomaton intersect(const BuchiAutomaton& a, const BuchiAutomaton& b);
/// L(a) ∪ L(b) over the union of the AP sets.
BuchiAutomaton unite(const BuchiAutomaton& a, const BuchiAutomaton& b);
/// Σ^ω \ L(a) over a's AP set. Throws ResourceLimitError past the budget.
BuchiAutomaton complement(const BuchiAutomaton& a, const ComplementOptions& opts = {});
/// Existentially removes `aps` from every guard. Throws UnknownApError.
BuchiAutomaton project(const BuchiAutomaton& a, const std::vector<std::string>& aps);
/// Renames APs; the map must be injective on a.aps() and must not collide
/// with APs left unrenamed. Throws CollisionError.
BuchiAutomaton substitute_aps(const BuchiAutomaton& a, const std::map<std::string, std::string>& theta);
/// Language-preserving reduction: trims useless states, quotients by direct
/// simulation and prunes edges into simulated states.
BuchiAutomaton simplify(const BuchiAutomaton& a);
/// Removes states that are unreachable or cannot reach an accepting cycle,
/// and clears acceptance on states that lie on no cycle.
BuchiAutomaton trim(const BuchiAutomaton& a);

struct EmptinessResult {
    bool empty = true;
    std::optional<LassoWord> witness;
};
EmptinessResult check_emptiness(const BuchiAutomaton& a);
inline bool is_empty(const BuchiAutomaton& a) { return check_emptiness(a).empty; }

/// Membership of an ultimately periodic word, by cycle search in the product
/// of `a` with the word's lasso.
bool accepts(const BuchiAutomaton& a, const LassoWord& w);

/// Individual complementation routes, exposed for cross-checking.
BuchiAutomaton complement_deterministic(const BuchiAutomaton& a, const ComplementOptions& opts = {});
BuchiAutomaton complement_semideterministic(const BuchiAutomaton& a, const ComplementOptions& opts = {});
BuchiAutomaton complement_rank_based(const BuchiAutomaton& a, const ComplementOptions& opts = {});
BuchiAutomaton complement_via_parity(const BuchiAutomaton& a, const ComplementOptions& opts = {});

/// True iff every state reachable from an accepting state has at most one
/// successor per letter.
bool is_semideterministic(const BuchiAutomaton& a);

}  // namespace pecan
