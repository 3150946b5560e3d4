#pragma once

#include "pecan/buchi.hpp"

#include <map>
#include <string>
#include <utility>
#include <vector>

namespace pecan {

/// AP renaming a ↦ b.
using Substitution = std::map<std::string, std::string>;

/// Binds logical variables to the ordered APs that encode them. Distinct
/// variables never share an AP; every mutation checks this.
class VariableMap {
public:
    using Entries = std::map<std::string, std::vector<std::string>>;

    VariableMap() = default;
    VariableMap(std::initializer_list<Entries::value_type> init);

    void insert(const std::string& var, std::vector<std::string> aps);
    void erase(const std::string& var) { entries_.erase(var); }
    bool contains(const std::string& var) const { return entries_.count(var) != 0; }
    const std::vector<std::string>& at(const std::string& var) const;
    std::size_t size() const { return entries_.size(); }
    bool empty() const { return entries_.empty(); }
    Entries::const_iterator begin() const { return entries_.begin(); }
    Entries::const_iterator end() const { return entries_.end(); }
    const Entries& entries() const { return entries_; }

    /// Owner of `ap`, if any.
    const std::string* owner(const std::string& ap) const;
    /// Renames every AP through `theta` (APs outside its domain are kept).
    VariableMap apply(const Substitution& theta) const;

    friend bool operator==(const VariableMap&, const VariableMap&) = default;

private:
    Entries entries_;
};

/// Source of AP lists for variables. A variable keeps the same APs for the
/// lifetime of the registry; fresh lists are named `v<k>_<i>`. Not
/// thread-safe: one registry per evaluation.
class ApRegistry {
public:
    const std::vector<std::string>& aps_for(const std::string& var, std::size_t arity = 1);
    std::vector<std::string> fresh(std::size_t arity = 1);
    std::size_t issued() const { return counter_; }

private:
    std::size_t counter_ = 0;
    std::map<std::string, std::vector<std::string>> by_var_;
};

/// A variable map paired with an automaton over (at least) its APs.
struct PecanAutomaton {
    VariableMap varmap;
    BuchiAutomaton automaton;

    PecanAutomaton() : automaton(BuchiAutomaton::universal()) {}
    /// Checks that every AP named in `v` occurs in `a`.
    PecanAutomaton(VariableMap v, BuchiAutomaton a);

    static PecanAutomaton top() { return PecanAutomaton(); }
    static PecanAutomaton bottom() { return PecanAutomaton({}, BuchiAutomaton::empty()); }
};

/// Keywise union; shared keys must carry identical AP lists (ConflictError).
/// With `disjoint`, any shared key is a conflict.
VariableMap merge_union(const VariableMap& v, const VariableMap& w, bool disjoint = false);

/// (U, θ) with U = v ∪ wθ: shared variables take v's APs; w-only variables
/// whose APs clash with v's are moved to fresh APs from `fresh`.
std::pair<VariableMap, Substitution> biased_merge(const VariableMap& v, const VariableMap& w, ApRegistry& fresh);

PecanAutomaton conjoin(const PecanAutomaton& a, const PecanAutomaton& b, ApRegistry& fresh);
PecanAutomaton disjoin(const PecanAutomaton& a, const PecanAutomaton& b, ApRegistry& fresh);
PecanAutomaton negate(const PecanAutomaton& a, const ComplementOptions& opts = {});

/// a[y/x]: x's APs are replaced positionally by `y_aps` and x is rebound
/// as y.
PecanAutomaton rename_var(const PecanAutomaton& a, const std::string& x, const std::string& y,
                          const std::vector<std::string>& y_aps);

/// Projects out the APs of x and drops x from the map.
PecanAutomaton project_var(const PecanAutomaton& a, const std::string& x);

}  // namespace pecan
