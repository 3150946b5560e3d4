#include "pecan/var_automaton.hpp"

#include "pecan/errors.hpp"

#include <set>

namespace pecan {

VariableMap::VariableMap(std::initializer_list<Entries::value_type> init) {
    for (const auto& [var, aps] : init) insert(var, aps);
}

void VariableMap::insert(const std::string& var, std::vector<std::string> aps) {
    std::set<std::string> distinct(aps.begin(), aps.end());
    if (distinct.size() != aps.size()) throw CollisionError("variable '" + var + "' lists an AP twice");
    for (const auto& [other, other_aps] : entries_) {
        if (other == var) continue;
        for (const auto& ap : other_aps)
            if (distinct.count(ap)) {
                throw CollisionError("AP '" + ap + "' would encode both '" + other + "' and '" + var + "'");
            }
    }
    entries_[var] = std::move(aps);
}

const std::vector<std::string>& VariableMap::at(const std::string& var) const {
    auto it = entries_.find(var);
    if (it == entries_.end()) throw UnknownVariableError("variable '" + var + "' is not in the variable map");
    return it->second;
}

const std::string* VariableMap::owner(const std::string& ap) const {
    for (const auto& [var, aps] : entries_)
        for (const auto& a : aps)
            if (a == ap) return &var;
    return nullptr;
}

VariableMap VariableMap::apply(const Substitution& theta) const {
    VariableMap out;
    for (const auto& [var, aps] : entries_) {
        std::vector<std::string> renamed;
        for (const auto& ap : aps) {
            auto it = theta.find(ap);
            renamed.push_back(it == theta.end() ? ap : it->second);
        }
        out.insert(var, std::move(renamed));
    }
    return out;
}

const std::vector<std::string>& ApRegistry::aps_for(const std::string& var, std::size_t arity) {
    auto it = by_var_.find(var);
    if (it == by_var_.end()) it = by_var_.emplace(var, fresh(arity)).first;
    if (it->second.size() != arity) {
        throw ArityError("variable '" + var + "' is encoded by " + std::to_string(it->second.size()) +
                         " APs, not " + std::to_string(arity));
    }
    return it->second;
}

std::vector<std::string> ApRegistry::fresh(std::size_t arity) {
    const std::size_t k = counter_++;
    std::vector<std::string> aps;
    for (std::size_t i = 0; i < arity; ++i) aps.push_back("v" + std::to_string(k) + "_" + std::to_string(i));
    return aps;
}

PecanAutomaton::PecanAutomaton(VariableMap v, BuchiAutomaton a) : varmap(std::move(v)), automaton(std::move(a)) {
    for (const auto& [var, aps] : varmap)
        for (const auto& ap : aps)
            if (!automaton.ap_index(ap)) {
                throw UnknownApError("variable '" + var + "' uses AP '" + ap + "' which the automaton lacks");
            }
}

VariableMap merge_union(const VariableMap& v, const VariableMap& w, bool disjoint) {
    VariableMap out = v;
    for (const auto& [var, aps] : w) {
        if (v.contains(var)) {
            if (disjoint || v.at(var) != aps) throw ConflictError("variable '" + var + "' is bound differently");
            continue;
        }
        out.insert(var, aps);
    }
    return out;
}

std::pair<VariableMap, Substitution> biased_merge(const VariableMap& v, const VariableMap& w, ApRegistry& fresh) {
    std::set<std::string> v_aps;
    for (const auto& [var, aps] : v) v_aps.insert(aps.begin(), aps.end());
    Substitution theta;
    VariableMap out = v;
    for (const auto& [var, aps] : w) {
        if (v.contains(var)) {
            const auto& target = v.at(var);
            if (target.size() != aps.size()) {
                throw ArityError("variable '" + var + "' has " + std::to_string(target.size()) + " and " +
                                 std::to_string(aps.size()) + " APs in the merged maps");
            }
            for (std::size_t i = 0; i < aps.size(); ++i)
                if (aps[i] != target[i]) theta[aps[i]] = target[i];
            continue;
        }
        bool clash = false;
        for (const auto& ap : aps) clash = clash || v_aps.count(ap);
        std::vector<std::string> kept = aps;
        if (clash) {
            kept = fresh.fresh(aps.size());
            for (std::size_t i = 0; i < aps.size(); ++i) theta[aps[i]] = kept[i];
        }
        out.insert(var, std::move(kept));
    }
    return {std::move(out), std::move(theta)};
}

namespace {

template <typename Combine>
PecanAutomaton combine(const PecanAutomaton& a, const PecanAutomaton& b, ApRegistry& fresh, Combine op) {
    if (a.automaton.num_states() < b.automaton.num_states()) {
        auto [u, theta] = biased_merge(a.varmap, b.varmap, fresh);
        return PecanAutomaton(std::move(u), op(a.automaton, substitute_aps(b.automaton, theta)));
    }
    auto [u, theta] = biased_merge(b.varmap, a.varmap, fresh);
    return PecanAutomaton(std::move(u), op(substitute_aps(a.automaton, theta), b.automaton));
}

}  // namespace

PecanAutomaton conjoin(const PecanAutomaton& a, const PecanAutomaton& b, ApRegistry& fresh) {
    return combine(a, b, fresh, [](const BuchiAutomaton& x, const BuchiAutomaton& y) { return intersect(x, y); });
}

PecanAutomaton disjoin(const PecanAutomaton& a, const PecanAutomaton& b, ApRegistry& fresh) {
    return combine(a, b, fresh, [](const BuchiAutomaton& x, const BuchiAutomaton& y) { return unite(x, y); });
}

PecanAutomaton negate(const PecanAutomaton& a, const ComplementOptions& opts) {
    return PecanAutomaton(a.varmap, complement(a.automaton, opts));
}

PecanAutomaton rename_var(const PecanAutomaton& a, const std::string& x, const std::string& y,
                          const std::vector<std::string>& y_aps) {
    const auto& x_aps = a.varmap.at(x);
    if (x_aps.size() != y_aps.size()) {
        throw ArityError("cannot rename '" + x + "' (" + std::to_string(x_aps.size()) + " APs) to '" + y + "' (" +
                         std::to_string(y_aps.size()) + " APs)");
    }
    if (x != y && a.varmap.contains(y)) throw CollisionError("variable '" + y + "' is already bound");
    Substitution theta;
    for (std::size_t i = 0; i < x_aps.size(); ++i)
        if (x_aps[i] != y_aps[i]) theta[x_aps[i]] = y_aps[i];
    VariableMap v = a.varmap;
    v.erase(x);
    v.insert(y, y_aps);
    return PecanAutomaton(std::move(v), substitute_aps(a.automaton, theta));
}

PecanAutomaton project_var(const PecanAutomaton& a, const std::string& x) {
    const auto& aps = a.varmap.at(x);
    VariableMap v = a.varmap;
    v.erase(x);
    return PecanAutomaton(std::move(v), project(a.automaton, aps));
}

}  // namespace pecan
