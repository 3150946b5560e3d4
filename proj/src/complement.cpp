#include "pecan/buchi.hpp"

#include "graph.hpp"
#include "pecan/errors.hpp"

#include <boost/dynamic_bitset.hpp>

#include <algorithm>
#include <deque>
#include <functional>
#include <map>
#include <unordered_map>

namespace pecan {

namespace {

using Bits = boost::dynamic_bitset<std::uint64_t>;

class Budget {
public:
    explicit Budget(const ComplementOptions& opts) : opts_(opts) {}
    void charge(std::size_t states) {
        if (states > opts_.state_budget) {
            throw ResourceLimitError("complementation exceeded the state budget of " +
                                     std::to_string(opts_.state_budget) + " states");
        }
        if (opts_.deadline && (++ticks_ & 0xFF) == 0 && std::chrono::steady_clock::now() > *opts_.deadline) {
            throw ResourceLimitError("complementation exceeded the deadline");
        }
    }

private:
    const ComplementOptions& opts_;
    std::size_t ticks_ = 0;
};

// succ(q, l) as a state bitset, precomputed for every state and letter.
class SuccessorTable {
public:
    explicit SuccessorTable(const BuchiAutomaton& a)
        : n_(a.num_states()), letters_(a.num_letters()), table_(n_ * letters_, Bits(n_)) {
        for (StateId q = 0; q < n_; ++q)
            for (const auto& e : a.edges(q))
                e.guard.for_each_letter([&](Letter l) { table_[q * letters_ + l].set(e.target); });
    }
    const Bits& at(StateId q, Letter l) const { return table_[q * letters_ + l]; }
    Bits post(const Bits& set, Letter l) const {
        Bits out(n_);
        for (auto q = set.find_first(); q != Bits::npos; q = set.find_next(q)) out |= at(static_cast<StateId>(q), l);
        return out;
    }
    std::size_t size() const { return n_; }

private:
    std::size_t n_, letters_;
    std::vector<Bits> table_;
};

void append_key(std::string& key, const Bits& b) {
    std::vector<std::uint64_t> blocks;
    boost::to_block_range(b, std::back_inserter(blocks));
    for (auto x : blocks) key.append(reinterpret_cast<const char*>(&x), sizeof x);
    key.push_back('|');
}

Bits accepting_set(const BuchiAutomaton& a) {
    Bits f(a.num_states());
    for (StateId q = 0; q < a.num_states(); ++q)
        if (a.is_accepting(q)) f.set(q);
    return f;
}

// Incrementally built output automaton whose states are identified by
// string keys; explores macrostates breadth first.
template <typename Macro>
class Explorer {
public:
    Explorer(std::vector<std::string> aps, Budget& budget) : out_(std::move(aps)), budget_(budget) {}

    StateId intern(const std::string& key, Macro m, bool accepting) {
        auto [it, fresh] = ids_.try_emplace(key, 0);
        if (fresh) {
            it->second = ids_.size() == 1 ? 0 : out_.add_state();
            out_.set_accepting(it->second, accepting);
            work_.emplace_back(it->second, std::move(m));
            budget_.charge(ids_.size());
        }
        return it->second;
    }
    bool pending() const { return !work_.empty(); }
    std::pair<StateId, Macro> next() {
        auto item = std::move(work_.front());
        work_.pop_front();
        return item;
    }
    BuchiAutomaton& automaton() { return out_; }

private:
    BuchiAutomaton out_;
    Budget& budget_;
    std::unordered_map<std::string, StateId> ids_;
    std::deque<std::pair<StateId, Macro>> work_;
};

// Collects per-target guards for one source state before emitting edges.
class EdgeSink {
public:
    explicit EdgeSink(std::size_t num_aps) : num_aps_(num_aps) {}
    void add(StateId target, Letter l) {
        auto [it, fresh] = guards_.try_emplace(target, Guard::none(num_aps_));
        it->second.insert(l);
    }
    void flush(BuchiAutomaton& a, StateId src) {
        for (auto& [t, g] : guards_) a.add_edge(src, t, g);
        guards_.clear();
    }

private:
    std::size_t num_aps_;
    std::map<StateId, Guard> guards_;
};

}  // namespace

bool is_semideterministic(const BuchiAutomaton& a) {
    detail::Adjacency adj(a.num_states());
    std::vector<std::uint32_t> roots;
    for (StateId s = 0; s < a.num_states(); ++s) {
        for (const auto& e : a.edges(s)) adj[s].push_back(e.target);
        if (a.is_accepting(s)) roots.push_back(s);
    }
    auto upper = detail::reachable_from(adj, roots);
    for (StateId s = 0; s < a.num_states(); ++s) {
        if (!upper[s]) continue;
        const auto& es = a.edges(s);
        for (std::size_t i = 0; i < es.size(); ++i)
            for (std::size_t j = i + 1; j < es.size(); ++j)
                if (es[i].guard.intersects(es[j].guard)) return false;
    }
    return true;
}

BuchiAutomaton complement_deterministic(const BuchiAutomaton& a, const ComplementOptions& opts) {
    if (!a.is_deterministic()) throw std::invalid_argument("complement_deterministic needs a deterministic automaton");
    Budget budget(opts);
    const std::size_t n = a.num_states();
    budget.charge(2 * n + 2);
    // Copy 1 tracks the run; copy 2 guesses that F is never visited again.
    BuchiAutomaton out(a.aps());
    const StateId sink = static_cast<StateId>(n);
    for (std::size_t i = 1; i < 2 * (n + 1); ++i) out.add_state();
    auto upper = [&](StateId q) { return static_cast<StateId>(n + 1 + q); };
    std::vector<std::vector<Edge>> complete(n + 1);
    for (StateId q = 0; q < n; ++q) {
        Guard rest = a.guard_true();
        for (const auto& e : a.edges(q)) {
            complete[q].push_back(e);
            rest -= e.guard;
        }
        if (!rest.is_false()) complete[q].push_back(Edge{sink, rest});
    }
    complete[sink].push_back(Edge{sink, a.guard_true()});
    auto rejecting = [&](StateId q) { return q == sink || !a.is_accepting(q); };
    for (StateId q = 0; q <= n; ++q) {
        out.set_accepting(upper(q), rejecting(q));
        for (const auto& e : complete[q]) {
            out.add_edge(q, e.target, e.guard);
            if (rejecting(e.target)) {
                out.add_edge(q, upper(e.target), e.guard);
                if (rejecting(q)) out.add_edge(upper(q), upper(e.target), e.guard);
            }
        }
    }
    out.set_initial(a.initial());
    return out;
}

// Breakpoint construction for automata that are deterministic from their
// accepting states onward. Macrostate (N, C, S, B): N tracks the
// nondeterministic part, C the deterministic runs that may still visit F,
// S the runs guessed never to visit F again, B the C-runs being waited on
// since the last breakpoint. Accepting iff B is empty.
BuchiAutomaton complement_semideterministic(const BuchiAutomaton& a, const ComplementOptions& opts) {
    if (!is_semideterministic(a)) {
        throw std::invalid_argument("complement_semideterministic needs a semi-deterministic automaton");
    }
    Budget budget(opts);
    const std::size_t n = a.num_states();
    detail::Adjacency adj(n);
    std::vector<std::uint32_t> roots;
    for (StateId s = 0; s < n; ++s) {
        for (const auto& e : a.edges(s)) adj[s].push_back(e.target);
        if (a.is_accepting(s)) roots.push_back(s);
    }
    Bits upper(n);
    {
        auto r = detail::reachable_from(adj, roots);
        for (StateId s = 0; s < n; ++s)
            if (r[s]) upper.set(s);
    }
    const Bits lower = ~upper;
    const Bits fin = accepting_set(a);
    SuccessorTable succ(a);

    struct Macro {
        Bits N, C, S, B;
    };
    auto key_of = [](const Macro& m) {
        std::string k;
        append_key(k, m.N);
        append_key(k, m.C);
        append_key(k, m.S);
        append_key(k, m.B);
        return k;
    };
    Explorer<Macro> ex(a.aps(), budget);
    Macro init{Bits(n), Bits(n), Bits(n), Bits(n)};
    (upper.test(a.initial()) ? init.C : init.N).set(a.initial());
    init.B = init.C;
    ex.intern(key_of(init), init, init.B.none());

    EdgeSink sink(a.num_aps());
    while (ex.pending()) {
        auto [src, m] = ex.next();
        for (Letter l = 0; l < a.num_letters(); ++l) {
            Bits fromN = succ.post(m.N, l);
            Bits must_safe = succ.post(m.S, l);
            if (must_safe.intersects(fin)) continue;
            Bits all = (fromN & upper) | succ.post(m.C, l) | must_safe;
            Bits optional = all - must_safe - fin;
            Bits nextN = fromN & lower;
            Bits trackedB = m.B.none() ? Bits(n) : succ.post(m.B, l);
            std::vector<std::size_t> free;
            for (auto q = optional.find_first(); q != Bits::npos; q = optional.find_next(q)) free.push_back(q);
            if (free.size() > 20) throw ResourceLimitError("breakpoint complementation: too many guesses");
            for (std::uint64_t choice = 0; choice < (std::uint64_t{1} << free.size()); ++choice) {
                Macro nm{nextN, Bits(n), must_safe, Bits(n)};
                for (std::size_t i = 0; i < free.size(); ++i)
                    if ((choice >> i) & 1U) nm.S.set(free[i]);
                nm.C = all - nm.S;
                nm.B = m.B.none() ? nm.C : (trackedB & nm.C);
                StateId dst = ex.intern(key_of(nm), nm, nm.B.none());
                sink.add(dst, l);
            }
        }
        sink.flush(ex.automaton(), src);
    }
    return std::move(ex.automaton());
}

// Friedgut-Kupferman-Vardi construction with tight level rankings: a
// subset phase, then a guessed switch into a ranking phase where the maximal
// odd rank stays fixed. Accepting iff the breakpoint set O is empty.
BuchiAutomaton complement_rank_based(const BuchiAutomaton& a, const ComplementOptions& opts) {
    Budget budget(opts);
    const std::size_t n = a.num_states();
    SuccessorTable succ(a);
    const Bits fin = accepting_set(a);
    constexpr int kNoRank = -1;

    struct Macro {
        bool ranked = false;
        Bits S, O;
        std::vector<int> rank;  // per state, kNoRank outside S
        int max_rank = 0;
    };
    auto key_of = [](const Macro& m) {
        std::string k(1, m.ranked ? 'R' : 'S');
        append_key(k, m.S);
        if (m.ranked) {
            append_key(k, m.O);
            for (int r : m.rank) k.push_back(static_cast<char>(r + 1));
        }
        return k;
    };

    // Calls `emit` for every tight ranking of `states` with maximal rank
    // `top`, bounded per state by `bound`.
    auto enumerate = [&](const std::vector<std::size_t>& states, const std::vector<int>& bound, int top,
                         const std::function<void(const std::vector<int>&)>& emit) {
        std::vector<int> rank(n, kNoRank);
        const int odd_count = (top + 1) / 2;
        std::vector<int> used(static_cast<std::size_t>(top + 1), 0);
        int covered = 0;
        std::function<void(std::size_t)> rec = [&](std::size_t i) {
            if (odd_count - covered > static_cast<int>(states.size() - i)) return;
            if (i == states.size()) {
                if (covered == odd_count) emit(rank);
                return;
            }
            const std::size_t q = states[i];
            const bool acc = fin.test(q);
            for (int r = std::min(bound[q], top); r >= 0; --r) {
                if (acc && (r % 2 == 1)) continue;
                rank[q] = r;
                bool newly = (r % 2 == 1) && used[static_cast<std::size_t>(r)]++ == 0;
                if (newly) ++covered;
                rec(i + 1);
                if (r % 2 == 1 && --used[static_cast<std::size_t>(r)] == 0) --covered;
            }
            rank[q] = kNoRank;
        };
        rec(0);
    };

    auto members = [](const Bits& s) {
        std::vector<std::size_t> v;
        for (auto q = s.find_first(); q != Bits::npos; q = s.find_next(q)) v.push_back(q);
        return v;
    };

    Explorer<Macro> ex(a.aps(), budget);
    Macro init;
    init.S = Bits(n);
    init.S.set(a.initial());
    init.O = Bits(n);
    ex.intern(key_of(init), init, false);

    EdgeSink sink(a.num_aps());
    while (ex.pending()) {
        auto [src, m] = ex.next();
        for (Letter l = 0; l < a.num_letters(); ++l) {
            Bits next = succ.post(m.S, l);
            if (next.none()) {
                // Every run died: the word is rejected by `a`.
                Macro dead;
                dead.ranked = true;
                dead.S = Bits(n);
                dead.O = Bits(n);
                dead.rank.assign(n, kNoRank);
                sink.add(ex.intern(key_of(dead), dead, true), l);
                continue;
            }
            auto states = members(next);
            auto add_ranked = [&](const std::vector<int>& rank, int top, const Bits* prev_o) {
                Macro nm;
                nm.ranked = true;
                nm.S = next;
                nm.rank = rank;
                nm.max_rank = top;
                Bits even(n);
                for (auto q : states)
                    if (rank[q] % 2 == 0) even.set(q);
                nm.O = (prev_o == nullptr || prev_o->none()) ? even : (succ.post(*prev_o, l) & even);
                sink.add(ex.intern(key_of(nm), nm, nm.O.none()), l);
            };
            if (!m.ranked) {
                Macro stay;
                stay.S = next;
                stay.O = Bits(n);
                sink.add(ex.intern(key_of(stay), stay, false), l);
                std::vector<int> bound(n, 2 * static_cast<int>(n));
                for (int top = 1; top <= 2 * static_cast<int>(states.size()) - 1; top += 2) {
                    enumerate(states, bound, top, [&](const std::vector<int>& rank) { add_ranked(rank, top, nullptr); });
                }
            } else {
                std::vector<int> bound(n, 2 * static_cast<int>(n));
                for (auto q = m.S.find_first(); q != Bits::npos; q = m.S.find_next(q)) {
                    const Bits& t = succ.at(static_cast<StateId>(q), l);
                    for (auto p = t.find_first(); p != Bits::npos; p = t.find_next(p))
                        bound[p] = std::min(bound[p], m.rank[q]);
                }
                enumerate(states, bound, m.max_rank,
                          [&](const std::vector<int>& rank) { add_ranked(rank, m.max_rank, &m.O); });
            }
        }
        sink.flush(ex.automaton(), src);
    }
    return std::move(ex.automaton());
}

namespace {

// Compact Safra tree: nodes sorted by name (index + 1), parents precede
// children, siblings ordered by age.
struct SafraTree {
    std::vector<int> parent;  // -1 for the root
    std::vector<Bits> label;

    std::string key() const {
        std::string k;
        for (std::size_t i = 0; i < parent.size(); ++i) {
            k.append(std::to_string(parent[i]));
            k.push_back(':');
            append_key(k, label[i]);
        }
        return k;
    }
};

struct SafraStep {
    SafraTree tree;
    int priority;
};

SafraStep safra_step(const SafraTree& t, Letter l, const SuccessorTable& succ, const Bits& fin, int no_event) {
    SafraTree w = t;
    const std::size_t old_size = t.parent.size();
    for (std::size_t i = 0; i < old_size; ++i) {
        Bits spawned = t.label[i] & fin;
        if (spawned.any()) {
            w.parent.push_back(static_cast<int>(i));
            w.label.push_back(std::move(spawned));
        }
    }
    const std::size_t size = w.parent.size();
    for (auto& lab : w.label) lab = succ.post(lab, l);
    for (std::size_t i = 1; i < size; ++i) {
        w.label[i] &= w.label[static_cast<std::size_t>(w.parent[i])];
        for (std::size_t j = 1; j < i; ++j)
            if (w.parent[j] == w.parent[i]) w.label[i] -= w.label[j];
    }
    std::vector<bool> removed(size, false);
    int priority = no_event;
    auto name = [](std::size_t i) { return static_cast<int>(i) + 1; };
    for (std::size_t i = 0; i < size; ++i) {
        if (w.label[i].none()) {
            removed[i] = true;
            priority = std::min(priority, 2 * name(i) - 1);
        }
    }
    for (std::size_t i = 0; i < size; ++i) {
        if (removed[i]) continue;
        Bits kids(succ.size());
        bool has_kid = false;
        for (std::size_t j = i + 1; j < size; ++j)
            if (!removed[j] && w.parent[j] == static_cast<int>(i)) {
                kids |= w.label[j];
                has_kid = true;
            }
        if (!has_kid || kids != w.label[i]) continue;
        priority = std::min(priority, 2 * name(i));
        // Descendants have larger indices than their ancestors.
        std::vector<bool> below(size, false);
        below[i] = true;
        for (std::size_t j = i + 1; j < size; ++j) {
            if (w.parent[j] >= 0 && below[static_cast<std::size_t>(w.parent[j])]) {
                below[j] = true;
                if (!removed[j]) {
                    removed[j] = true;
                    priority = std::min(priority, 2 * name(j) - 1);
                }
            }
        }
    }
    SafraStep out{SafraTree{}, priority};
    std::vector<int> index(size, -1);
    for (std::size_t i = 0; i < size; ++i) {
        if (removed[i]) continue;
        index[i] = static_cast<int>(out.tree.parent.size());
        out.tree.parent.push_back(w.parent[i] < 0 ? -1 : index[static_cast<std::size_t>(w.parent[i])]);
        out.tree.label.push_back(std::move(w.label[i]));
    }
    return out;
}

}  // namespace

// Determinizes into a min-even parity automaton over Safra trees with
// dynamic names, dualizes the parity condition, and converts back to Büchi by
// guessing the least odd priority seen infinitely often.
BuchiAutomaton complement_via_parity(const BuchiAutomaton& a, const ComplementOptions& opts) {
    Budget budget(opts);
    const std::size_t n = a.num_states();
    SuccessorTable succ(a);
    const Bits fin = accepting_set(a);
    const int no_event = 4 * static_cast<int>(n) + 3;

    // Deterministic parity automaton, explored breadth first.
    std::vector<SafraTree> trees;
    std::unordered_map<std::string, std::uint32_t> ids;
    std::vector<std::vector<std::pair<std::uint32_t, int>>> delta;  // per state, per letter
    auto intern = [&](SafraTree t) {
        std::string k = t.key();
        auto [it, fresh] = ids.try_emplace(std::move(k), static_cast<std::uint32_t>(trees.size()));
        if (fresh) {
            trees.push_back(std::move(t));
            budget.charge(trees.size());
        }
        return it->second;
    };
    SafraTree init;
    init.parent.push_back(-1);
    init.label.emplace_back(n);
    init.label[0].set(a.initial());
    intern(init);
    for (std::uint32_t d = 0; d < trees.size(); ++d) {
        std::vector<std::pair<std::uint32_t, int>> row;
        row.reserve(a.num_letters());
        for (Letter l = 0; l < a.num_letters(); ++l) {
            if (trees[d].parent.empty()) {
                row.emplace_back(d, no_event);
                continue;
            }
            SafraStep step = safra_step(trees[d], l, succ, fin, no_event);
            int prio = step.priority;
            std::uint32_t target = intern(std::move(step.tree));
            row.emplace_back(target, prio);
        }
        delta.push_back(std::move(row));
    }

    std::vector<int> odd;
    for (const auto& row : delta)
        for (const auto& [t, p] : row)
            if (p % 2 == 1) odd.push_back(p);
    std::sort(odd.begin(), odd.end());
    odd.erase(std::unique(odd.begin(), odd.end()), odd.end());

    // NBA: (d, -1, 0) is the waiting copy; (d, o, hit) commits to o being
    // the least priority seen infinitely often.
    struct Macro {
        std::uint32_t d;
        int o;
    };
    Explorer<Macro> ex(a.aps(), budget);
    auto key_of = [](std::uint32_t d, int o, bool hit) {
        return std::to_string(d) + "," + std::to_string(o) + "," + (hit ? "1" : "0");
    };
    ex.intern(key_of(0, -1, false), Macro{0, -1}, false);
    EdgeSink sink(a.num_aps());
    while (ex.pending()) {
        auto [src, m] = ex.next();
        for (Letter l = 0; l < a.num_letters(); ++l) {
            auto [t, p] = delta[m.d][l];
            if (m.o < 0) {
                sink.add(ex.intern(key_of(t, -1, false), Macro{t, -1}, false), l);
                for (int o : odd) sink.add(ex.intern(key_of(t, o, false), Macro{t, o}, false), l);
            } else if (p >= m.o) {
                bool hit = p == m.o;
                sink.add(ex.intern(key_of(t, m.o, hit), Macro{t, m.o}, hit), l);
            }
        }
        sink.flush(ex.automaton(), src);
    }
    return std::move(ex.automaton());
}

BuchiAutomaton complement(const BuchiAutomaton& a, const ComplementOptions& opts) {
    BuchiAutomaton s = simplify(a);
    if (is_empty(s)) return BuchiAutomaton::universal(a.aps());
    BuchiAutomaton out;
    switch (opts.method) {
        case ComplementMethod::RankBased: out = complement_rank_based(s, opts); break;
        case ComplementMethod::Determinize: out = complement_via_parity(s, opts); break;
        case ComplementMethod::Auto:
            if (s.is_deterministic()) out = complement_deterministic(s, opts);
            else if (is_semideterministic(s)) out = complement_semideterministic(s, opts);
            else out = complement_via_parity(s, opts);
            break;
    }
    return simplify(out);
}

}  // namespace pecan
