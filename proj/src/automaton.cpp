#include "pecan/buchi.hpp"

#include "graph.hpp"
#include "pecan/errors.hpp"

#include <algorithm>
#include <deque>
#include <unordered_map>

namespace pecan {

BuchiAutomaton::BuchiAutomaton(std::vector<std::string> aps) : aps_(std::move(aps)) {
    std::set<std::string> seen(aps_.begin(), aps_.end());
    if (seen.size() != aps_.size()) throw CollisionError("duplicate AP in automaton AP list");
    if (aps_.size() > kMaxAps) (void)Guard(aps_.size());  // throws
    add_state(false);
}

BuchiAutomaton BuchiAutomaton::universal(std::vector<std::string> aps) {
    BuchiAutomaton a(std::move(aps));
    a.set_accepting(0);
    a.add_edge(0, 0, a.guard_true());
    return a;
}

std::optional<std::size_t> BuchiAutomaton::ap_index(const std::string& ap) const {
    auto it = std::find(aps_.begin(), aps_.end(), ap);
    if (it == aps_.end()) return std::nullopt;
    return static_cast<std::size_t>(it - aps_.begin());
}

std::size_t BuchiAutomaton::num_edges() const {
    std::size_t n = 0;
    for (const auto& es : out_) n += es.size();
    return n;
}

std::size_t BuchiAutomaton::num_accepting() const {
    return static_cast<std::size_t>(std::count(accepting_.begin(), accepting_.end(), true));
}

void BuchiAutomaton::set_initial(StateId s) {
    if (s >= num_states()) throw std::out_of_range("initial state out of range");
    initial_ = s;
}

StateId BuchiAutomaton::add_state(bool accepting) {
    out_.emplace_back();
    accepting_.push_back(accepting);
    return static_cast<StateId>(out_.size() - 1);
}

void BuchiAutomaton::add_edge(StateId from, StateId to, const Guard& g) {
    if (from >= num_states() || to >= num_states()) throw std::out_of_range("edge endpoint out of range");
    if (g.num_aps() != num_aps()) throw std::invalid_argument("guard built over a different AP set");
    if (g.is_false()) return;
    for (auto& e : out_[from]) {
        if (e.target == to) {
            e.guard |= g;
            return;
        }
    }
    out_[from].push_back(Edge{to, g});
}

Guard BuchiAutomaton::guard_atom(const std::string& ap) const {
    auto i = ap_index(ap);
    if (!i) throw UnknownApError("AP '" + ap + "' is not in the automaton");
    return Guard::atom(num_aps(), *i);
}

std::vector<StateId> BuchiAutomaton::successors(StateId s, Letter l) const {
    std::vector<StateId> out;
    for (const auto& e : out_.at(s))
        if (e.guard.contains(l)) out.push_back(e.target);
    return out;
}

bool BuchiAutomaton::is_deterministic() const {
    for (const auto& es : out_)
        for (std::size_t i = 0; i < es.size(); ++i)
            for (std::size_t j = i + 1; j < es.size(); ++j)
                if (es[i].guard.intersects(es[j].guard)) return false;
    return true;
}

Letter letter_of(const Valuation& v, const std::vector<std::string>& aps) {
    Letter l = 0;
    for (std::size_t i = 0; i < aps.size(); ++i)
        if (v.count(aps[i])) l |= Letter{1} << i;
    return l;
}

Valuation valuation_of(Letter l, const std::vector<std::string>& aps) {
    Valuation v;
    for (std::size_t i = 0; i < aps.size(); ++i)
        if ((l >> i) & 1U) v.insert(aps[i]);
    return v;
}

namespace {

struct ApUnion {
    std::vector<std::string> aps;
    std::vector<std::size_t> pos_a, pos_b;
};

ApUnion merge_aps(const BuchiAutomaton& a, const BuchiAutomaton& b) {
    ApUnion u;
    u.aps = a.aps();
    for (std::size_t i = 0; i < a.num_aps(); ++i) u.pos_a.push_back(i);
    for (const auto& ap : b.aps()) {
        auto it = std::find(u.aps.begin(), u.aps.end(), ap);
        if (it == u.aps.end()) {
            u.pos_b.push_back(u.aps.size());
            u.aps.push_back(ap);
        } else {
            u.pos_b.push_back(static_cast<std::size_t>(it - u.aps.begin()));
        }
    }
    if (u.aps.size() > kMaxAps) (void)Guard(u.aps.size());
    return u;
}

// Edge guards of `a` re-expressed over the union AP list.
std::vector<std::vector<Edge>> lifted_edges(const BuchiAutomaton& a, const std::vector<std::size_t>& pos,
                                            std::size_t total) {
    std::vector<std::vector<Edge>> out(a.num_states());
    bool identity = a.num_aps() == total;
    for (std::size_t i = 0; identity && i < pos.size(); ++i) identity = pos[i] == i;
    for (StateId s = 0; s < a.num_states(); ++s)
        for (const auto& e : a.edges(s))
            out[s].push_back(Edge{e.target, identity ? e.guard : e.guard.lift(pos, total)});
    return out;
}

bool all_accepting(const BuchiAutomaton& a) { return a.num_accepting() == a.num_states(); }

}  // namespace

BuchiAutomaton intersect(const BuchiAutomaton& a, const BuchiAutomaton& b) {
    ApUnion u = merge_aps(a, b);
    const auto ea = lifted_edges(a, u.pos_a, u.aps.size());
    const auto eb = lifted_edges(b, u.pos_b, u.aps.size());

    // When one side accepts on every state only the other side's acceptance
    // needs tracking and a single copy suffices.
    const bool single = all_accepting(a) || all_accepting(b);

    BuchiAutomaton out(u.aps);
    struct Key {
        StateId p, q;
        std::uint8_t copy;
        bool operator==(const Key&) const = default;
    };
    struct KeyHash {
        std::size_t operator()(const Key& k) const {
            return (std::size_t{k.p} * 0x9E3779B1u) ^ (std::size_t{k.q} << 1) ^ k.copy;
        }
    };
    std::unordered_map<Key, StateId, KeyHash> ids;
    std::deque<Key> work;
    auto accepting = [&](const Key& k) {
        if (single) {
            return all_accepting(a) ? b.is_accepting(k.q) : a.is_accepting(k.p);
        }
        return k.copy == 1 && b.is_accepting(k.q);
    };
    auto id_of = [&](const Key& k) {
        auto [it, fresh] = ids.try_emplace(k, 0);
        if (fresh) {
            it->second = ids.size() == 1 ? 0 : out.add_state();
            out.set_accepting(it->second, accepting(k));
            work.push_back(k);
        }
        return it->second;
    };
    id_of(Key{a.initial(), b.initial(), 0});
    while (!work.empty()) {
        Key k = work.front();
        work.pop_front();
        StateId src = ids.at(k);
        std::uint8_t next_copy = k.copy;
        if (!single) {
            if (k.copy == 0 && a.is_accepting(k.p)) next_copy = 1;
            else if (k.copy == 1 && b.is_accepting(k.q)) next_copy = 0;
        }
        for (const auto& x : ea[k.p]) {
            for (const auto& y : eb[k.q]) {
                Guard g = x.guard & y.guard;
                if (g.is_false()) continue;
                StateId dst = id_of(Key{x.target, y.target, next_copy});
                out.add_edge(src, dst, g);
            }
        }
    }
    return out;
}

BuchiAutomaton unite(const BuchiAutomaton& a, const BuchiAutomaton& b) {
    ApUnion u = merge_aps(a, b);
    const auto ea = lifted_edges(a, u.pos_a, u.aps.size());
    const auto eb = lifted_edges(b, u.pos_b, u.aps.size());
    BuchiAutomaton out(u.aps);
    const StateId base_a = static_cast<StateId>(out.num_states());
    for (StateId s = 0; s < a.num_states(); ++s) out.add_state(a.is_accepting(s));
    const StateId base_b = static_cast<StateId>(out.num_states());
    for (StateId s = 0; s < b.num_states(); ++s) out.add_state(b.is_accepting(s));
    for (StateId s = 0; s < a.num_states(); ++s)
        for (const auto& e : ea[s]) out.add_edge(base_a + s, base_a + e.target, e.guard);
    for (StateId s = 0; s < b.num_states(); ++s)
        for (const auto& e : eb[s]) out.add_edge(base_b + s, base_b + e.target, e.guard);
    for (const auto& e : ea[a.initial()]) out.add_edge(0, base_a + e.target, e.guard);
    for (const auto& e : eb[b.initial()]) out.add_edge(0, base_b + e.target, e.guard);
    return out;
}

BuchiAutomaton project(const BuchiAutomaton& a, const std::vector<std::string>& aps) {
    std::vector<bool> drop(a.num_aps(), false);
    for (const auto& ap : aps) {
        auto i = a.ap_index(ap);
        if (!i) throw UnknownApError("cannot project AP '" + ap + "': not in the automaton");
        drop[*i] = true;
    }
    std::vector<std::string> kept;
    for (std::size_t i = 0; i < a.num_aps(); ++i)
        if (!drop[i]) kept.push_back(a.aps()[i]);
    BuchiAutomaton out(kept);
    for (StateId s = 1; s < a.num_states(); ++s) out.add_state();
    for (StateId s = 0; s < a.num_states(); ++s) {
        out.set_accepting(s, a.is_accepting(s));
        for (const auto& e : a.edges(s)) out.add_edge(s, e.target, e.guard.exists(drop));
    }
    out.set_initial(a.initial());
    return out;
}

BuchiAutomaton substitute_aps(const BuchiAutomaton& a, const std::map<std::string, std::string>& theta) {
    std::vector<std::string> renamed = a.aps();
    for (auto& ap : renamed) {
        auto it = theta.find(ap);
        if (it != theta.end()) ap = it->second;
    }
    std::set<std::string> distinct(renamed.begin(), renamed.end());
    if (distinct.size() != renamed.size()) {
        throw CollisionError("AP substitution maps two distinct APs to the same AP");
    }
    BuchiAutomaton out(renamed);
    for (StateId s = 1; s < a.num_states(); ++s) out.add_state();
    for (StateId s = 0; s < a.num_states(); ++s) {
        out.set_accepting(s, a.is_accepting(s));
        out.mutable_edges(s) = a.edges(s);
    }
    out.set_initial(a.initial());
    return out;
}

namespace {

detail::Adjacency adjacency(const BuchiAutomaton& a) {
    detail::Adjacency adj(a.num_states());
    for (StateId s = 0; s < a.num_states(); ++s)
        for (const auto& e : a.edges(s)) adj[s].push_back(e.target);
    return adj;
}

// Letters along a shortest path from `from` to `to`; at least one step when
// `nonempty`.
std::vector<Letter> path_letters(const BuchiAutomaton& a, StateId from, StateId to, bool nonempty) {
    if (!nonempty && from == to) return {};
    std::vector<std::optional<std::pair<StateId, Letter>>> parent(a.num_states());
    std::vector<bool> seen(a.num_states(), false);
    std::deque<StateId> work;
    for (const auto& e : a.edges(from)) {
        if (!seen[e.target]) {
            seen[e.target] = true;
            parent[e.target] = std::make_pair(from, e.guard.first_letter());
            work.push_back(e.target);
        }
    }
    while (!work.empty() && !seen[to]) {
        StateId v = work.front();
        work.pop_front();
        for (const auto& e : a.edges(v)) {
            if (!seen[e.target]) {
                seen[e.target] = true;
                parent[e.target] = std::make_pair(v, e.guard.first_letter());
                work.push_back(e.target);
            }
        }
    }
    std::vector<Letter> letters;
    StateId cur = to;
    do {
        auto [p, l] = *parent[cur];
        letters.push_back(l);
        cur = p;
    } while (cur != from);
    std::reverse(letters.begin(), letters.end());
    return letters;
}

}  // namespace

EmptinessResult check_emptiness(const BuchiAutomaton& a) {
    auto adj = adjacency(a);
    auto scc = detail::strongly_connected(adj, {a.initial()});
    for (StateId s = 0; s < a.num_states(); ++s) {
        auto c = scc.component[s];
        if (c == UINT32_MAX || !a.is_accepting(s) || !scc.nontrivial[c]) continue;
        LassoWord w;
        for (Letter l : path_letters(a, a.initial(), s, false)) w.prefix.push_back(valuation_of(l, a.aps()));
        for (Letter l : path_letters(a, s, s, true)) w.cycle.push_back(valuation_of(l, a.aps()));
        return EmptinessResult{false, std::move(w)};
    }
    return EmptinessResult{true, std::nullopt};
}

bool accepts(const BuchiAutomaton& a, const LassoWord& w) {
    if (w.cycle.empty()) throw std::invalid_argument("lasso cycle must be nonempty");
    std::vector<Letter> word;
    for (const auto& v : w.prefix) word.push_back(letter_of(v, a.aps()));
    for (const auto& v : w.cycle) word.push_back(letter_of(v, a.aps()));
    const std::size_t len = word.size(), loop = w.prefix.size();
    const std::size_t n = a.num_states() * len;
    auto node = [&](StateId q, std::size_t i) { return static_cast<std::uint32_t>(q * len + i); };
    detail::Adjacency adj(n);
    for (StateId q = 0; q < a.num_states(); ++q) {
        for (std::size_t i = 0; i < len; ++i) {
            std::size_t next = i + 1 < len ? i + 1 : loop;
            for (const auto& e : a.edges(q))
                if (e.guard.contains(word[i])) adj[node(q, i)].push_back(node(e.target, next));
        }
    }
    auto scc = detail::strongly_connected(adj, {node(a.initial(), 0)});
    for (StateId q = 0; q < a.num_states(); ++q) {
        if (!a.is_accepting(q)) continue;
        for (std::size_t i = loop; i < len; ++i) {
            auto c = scc.component[node(q, i)];
            if (c != UINT32_MAX && scc.nontrivial[c]) return true;
        }
    }
    return false;
}

}  // namespace pecan
