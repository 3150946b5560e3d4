#include "pecan/buchi.hpp"

#include "graph.hpp"

#include <deque>

namespace pecan {

namespace {

// Above this size the quadratic simulation pass is skipped.
constexpr std::size_t kSimulationLimit = 300;

detail::Adjacency adjacency(const BuchiAutomaton& a) {
    detail::Adjacency adj(a.num_states());
    for (StateId s = 0; s < a.num_states(); ++s)
        for (const auto& e : a.edges(s)) adj[s].push_back(e.target);
    return adj;
}

// Copies the states marked `keep`, numbering them in BFS order from the
// initial state. Precondition: keep[initial].
BuchiAutomaton restrict_to(const BuchiAutomaton& a, const std::vector<bool>& keep,
                           const std::vector<bool>& accepting) {
    std::vector<StateId> id(a.num_states(), UINT32_MAX);
    std::vector<StateId> order{a.initial()};
    id[a.initial()] = 0;
    for (std::size_t i = 0; i < order.size(); ++i)
        for (const auto& e : a.edges(order[i]))
            if (keep[e.target] && id[e.target] == UINT32_MAX) {
                id[e.target] = static_cast<StateId>(order.size());
                order.push_back(e.target);
            }
    BuchiAutomaton out(a.aps());
    for (std::size_t i = 1; i < order.size(); ++i) out.add_state();
    for (std::size_t i = 0; i < order.size(); ++i) {
        StateId s = order[i];
        out.set_accepting(static_cast<StateId>(i), accepting[s]);
        for (const auto& e : a.edges(s))
            if (id[e.target] != UINT32_MAX) out.add_edge(static_cast<StateId>(i), id[e.target], e.guard);
    }
    return out;
}

using Relation = std::vector<std::vector<bool>>;

// Greatest direct simulation: R[p][q] iff q can match every move of p step
// by step, being accepting whenever p is.
Relation direct_simulation(const BuchiAutomaton& a) {
    const std::size_t n = a.num_states();
    Relation r(n, std::vector<bool>(n, true));
    for (StateId p = 0; p < n; ++p)
        for (StateId q = 0; q < n; ++q)
            if (a.is_accepting(p) && !a.is_accepting(q)) r[p][q] = false;
    bool changed = true;
    while (changed) {
        changed = false;
        for (StateId p = 0; p < n; ++p) {
            for (StateId q = 0; q < n; ++q) {
                if (p == q || !r[p][q]) continue;
                for (const auto& ep : a.edges(p)) {
                    Guard cover = a.guard_false();
                    for (const auto& eq : a.edges(q))
                        if (r[ep.target][eq.target]) cover |= eq.guard;
                    if (!ep.guard.subset_of(cover)) {
                        r[p][q] = false;
                        changed = true;
                        break;
                    }
                }
            }
        }
    }
    return r;
}

BuchiAutomaton reduce_by_simulation(const BuchiAutomaton& a) {
    const std::size_t n = a.num_states();
    Relation r = direct_simulation(a);
    std::vector<StateId> cls(n, UINT32_MAX);
    std::vector<StateId> rep;
    for (StateId p = 0; p < n; ++p) {
        if (cls[p] != UINT32_MAX) continue;
        cls[p] = static_cast<StateId>(rep.size());
        for (StateId q = p + 1; q < n; ++q)
            if (cls[q] == UINT32_MAX && r[p][q] && r[q][p]) cls[q] = cls[p];
        rep.push_back(p);
    }
    const std::size_t m = rep.size();
    BuchiAutomaton quot(a.aps());
    for (std::size_t i = 1; i < m; ++i) quot.add_state();
    for (StateId c = 0; c < m; ++c) quot.set_accepting(c, a.is_accepting(rep[c]));
    for (StateId p = 0; p < n; ++p)
        for (const auto& e : a.edges(p)) quot.add_edge(cls[p], cls[e.target], e.guard);
    quot.set_initial(cls[a.initial()]);

    // Drop letters on edges whose target is strictly simulated by another
    // target reachable from the same source on that letter.
    BuchiAutomaton pruned(a.aps());
    for (std::size_t i = 1; i < m; ++i) pruned.add_state();
    for (StateId c = 0; c < m; ++c) {
        pruned.set_accepting(c, quot.is_accepting(c));
        const auto& es = quot.edges(c);
        for (const auto& e1 : es) {
            Guard g = e1.guard;
            for (const auto& e2 : es)
                if (e2.target != e1.target && r[rep[e1.target]][rep[e2.target]]) g -= e2.guard;
            pruned.add_edge(c, e1.target, g);
        }
    }
    pruned.set_initial(quot.initial());
    return pruned;
}

}  // namespace

BuchiAutomaton trim(const BuchiAutomaton& a) {
    auto adj = adjacency(a);
    auto reach = detail::reachable_from(adj, {a.initial()});
    auto scc = detail::strongly_connected(adj, {a.initial()});
    std::vector<bool> accepting(a.num_states(), false), good(a.num_states(), false);
    for (StateId s = 0; s < a.num_states(); ++s) {
        auto c = scc.component[s];
        if (reach[s] && a.is_accepting(s) && scc.nontrivial[c]) accepting[s] = good[s] = true;
    }
    auto useful = detail::coreachable(adj, good);
    for (StateId s = 0; s < a.num_states(); ++s) useful[s] = useful[s] && reach[s];
    if (!useful[a.initial()]) return BuchiAutomaton::empty(a.aps());
    return restrict_to(a, useful, accepting);
}

BuchiAutomaton simplify(const BuchiAutomaton& a) {
    BuchiAutomaton t = trim(a);
    if (t.num_states() > kSimulationLimit || t.num_states() <= 1) return t;
    return trim(reduce_by_simulation(t));
}

}  // namespace pecan
