#pragma once

#include <boost/dynamic_bitset.hpp>

#include <cstddef>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace pecan {

/// A valuation of an automaton's APs: bit i is the value of the i-th AP.
using Letter = std::uint32_t;

/// Largest AP set an automaton may carry. Guards are stored as truth tables
/// over 2^k letters, so this bounds memory per edge.
inline constexpr std::size_t kMaxAps = 16;

/// Edge guard over an ordered AP list, stored as the set of letters it admits.
/// Two guards over the same AP list are equal iff they denote the same
/// boolean function.
class Guard {
public:
    Guard() : Guard(0) {}
    explicit Guard(std::size_t num_aps);

    static Guard none(std::size_t num_aps) { return Guard(num_aps); }
    static Guard all(std::size_t num_aps);
    static Guard atom(std::size_t num_aps, std::size_t ap);
    static Guard letter(std::size_t num_aps, Letter l);

    std::size_t num_aps() const { return num_aps_; }
    std::size_t num_letters() const { return bits_.size(); }

    bool contains(Letter l) const { return bits_.test(l); }
    void insert(Letter l) { bits_.set(l); }
    bool is_false() const { return bits_.none(); }
    bool is_true() const { return bits_.all(); }
    std::size_t count() const { return bits_.count(); }
    /// Smallest admitted letter. Precondition: !is_false().
    Letter first_letter() const { return static_cast<Letter>(bits_.find_first()); }
    bool intersects(const Guard& other) const { return bits_.intersects(other.bits_); }
    bool subset_of(const Guard& other) const { return bits_.is_subset_of(other.bits_); }

    template <typename F>
    void for_each_letter(F&& f) const {
        for (auto i = bits_.find_first(); i != Bits::npos; i = bits_.find_next(i)) f(static_cast<Letter>(i));
    }

    Guard& operator&=(const Guard& o) { bits_ &= o.bits_; return *this; }
    Guard& operator|=(const Guard& o) { bits_ |= o.bits_; return *this; }
    Guard& operator-=(const Guard& o) { bits_ -= o.bits_; return *this; }
    friend Guard operator&(Guard a, const Guard& b) { return a &= b; }
    friend Guard operator|(Guard a, const Guard& b) { return a |= b; }
    friend Guard operator-(Guard a, const Guard& b) { return a -= b; }
    Guard operator~() const;
    friend bool operator==(const Guard& a, const Guard& b) {
        return a.num_aps_ == b.num_aps_ && a.bits_ == b.bits_;
    }

    /// Re-expresses the guard over a larger or reordered AP list.
    /// `position[i]` is where this guard's AP i sits in the target list.
    Guard lift(const std::vector<std::size_t>& position, std::size_t target_aps) const;

    /// Existentially quantifies the APs whose `drop[i]` is set, then compacts
    /// the remaining APs preserving their order.
    Guard exists(const std::vector<bool>& drop) const;

    /// Identifies AP `from` with AP `onto` (keeps only letters where both
    /// agree), then removes `from`.
    Guard identify(std::size_t from, std::size_t onto) const;

    /// APs the guard actually depends on.
    std::vector<bool> support() const;

    std::size_t hash() const;

private:
    using Bits = boost::dynamic_bitset<std::uint64_t>;
    std::size_t num_aps_;
    Bits bits_;
};

/// Boolean formula over AP indices. This is the external (printable,
/// parseable) view of a guard.
struct BoolExpr {
    enum class Kind { True, False, Atom, Not, And, Or };
    Kind kind = Kind::True;
    std::size_t atom = 0;
    std::vector<BoolExpr> kids;

    static BoolExpr constant(bool v) { return BoolExpr{v ? Kind::True : Kind::False, 0, {}}; }
    static BoolExpr var(std::size_t i) { return BoolExpr{Kind::Atom, i, {}}; }
    static BoolExpr negation(BoolExpr e);
    static BoolExpr conj(BoolExpr a, BoolExpr b);
    static BoolExpr disj(BoolExpr a, BoolExpr b);

    friend bool operator==(const BoolExpr&, const BoolExpr&) = default;
};

/// Evaluates the formula into a truth table over `num_aps` APs.
Guard to_guard(const BoolExpr& e, std::size_t num_aps);

/// Canonical reduced formula for a guard (ordered Shannon expansion with
/// constant folding), so equal guards print identically.
BoolExpr to_expr(const Guard& g);

/// Prints with `t`, `f`, `!`, `&`, `|`, parentheses; atoms through `atom_name`.
std::string to_string(const BoolExpr& e, const std::function<std::string(std::size_t)>& atom_name);

}  // namespace pecan

template <>
struct std::hash<pecan::Guard> {
    std::size_t operator()(const pecan::Guard& g) const { return g.hash(); }
};
