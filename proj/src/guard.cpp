#include "pecan/guard.hpp"

#include "pecan/errors.hpp"

#include <boost/functional/hash.hpp>

namespace pecan {

Guard::Guard(std::size_t num_aps) : num_aps_(num_aps) {
    if (num_aps > kMaxAps) {
        throw ResourceLimitError("automaton needs " + std::to_string(num_aps) + " APs; at most " +
                                 std::to_string(kMaxAps) + " are supported");
    }
    bits_.resize(std::size_t{1} << num_aps);
}

Guard Guard::all(std::size_t num_aps) {
    Guard g(num_aps);
    g.bits_.set();
    return g;
}

Guard Guard::atom(std::size_t num_aps, std::size_t ap) {
    Guard g(num_aps);
    for (std::size_t l = 0; l < g.bits_.size(); ++l)
        if ((l >> ap) & 1U) g.bits_.set(l);
    return g;
}

Guard Guard::letter(std::size_t num_aps, Letter l) {
    Guard g(num_aps);
    g.bits_.set(l);
    return g;
}

Guard Guard::operator~() const {
    Guard g = *this;
    g.bits_.flip();
    return g;
}

Guard Guard::lift(const std::vector<std::size_t>& position, std::size_t target_aps) const {
    Guard out(target_aps);
    if (is_true()) return all(target_aps);
    if (is_false()) return out;
    const std::size_t n = out.bits_.size();
    for (std::size_t l = 0; l < n; ++l) {
        Letter src = 0;
        for (std::size_t i = 0; i < num_aps_; ++i)
            if ((l >> position[i]) & 1U) src |= Letter{1} << i;
        if (bits_.test(src)) out.bits_.set(l);
    }
    return out;
}

Guard Guard::exists(const std::vector<bool>& drop) const {
    std::vector<std::size_t> keep_pos(num_aps_, 0);
    std::size_t kept = 0;
    for (std::size_t i = 0; i < num_aps_; ++i)
        if (!drop[i]) keep_pos[i] = kept++;
    Guard out(kept);
    for_each_letter([&](Letter l) {
        Letter dst = 0;
        for (std::size_t i = 0; i < num_aps_; ++i)
            if (!drop[i] && ((l >> i) & 1U)) dst |= Letter{1} << keep_pos[i];
        out.bits_.set(dst);
    });
    return out;
}

Guard Guard::identify(std::size_t from, std::size_t onto) const {
    Guard diag = *this;
    for (std::size_t l = 0; l < bits_.size(); ++l)
        if (((l >> from) & 1U) != ((l >> onto) & 1U)) diag.bits_.reset(l);
    std::vector<bool> drop(num_aps_, false);
    drop[from] = true;
    return diag.exists(drop);
}

std::vector<bool> Guard::support() const {
    std::vector<bool> out(num_aps_, false);
    for (std::size_t i = 0; i < num_aps_; ++i) {
        const std::size_t bit = std::size_t{1} << i;
        for (std::size_t l = 0; l < bits_.size(); ++l) {
            if ((l & bit) == 0 && bits_.test(l) != bits_.test(l | bit)) {
                out[i] = true;
                break;
            }
        }
    }
    return out;
}

std::size_t Guard::hash() const {
    std::size_t seed = num_aps_;
    std::vector<std::uint64_t> blocks;
    boost::to_block_range(bits_, std::back_inserter(blocks));
    for (auto b : blocks) boost::hash_combine(seed, b);
    return seed;
}

BoolExpr BoolExpr::negation(BoolExpr e) {
    if (e.kind == Kind::True) return constant(false);
    if (e.kind == Kind::False) return constant(true);
    if (e.kind == Kind::Not) return std::move(e.kids.front());
    return BoolExpr{Kind::Not, 0, {std::move(e)}};
}

BoolExpr BoolExpr::conj(BoolExpr a, BoolExpr b) {
    if (a.kind == Kind::False || b.kind == Kind::False) return constant(false);
    if (a.kind == Kind::True) return b;
    if (b.kind == Kind::True) return a;
    return BoolExpr{Kind::And, 0, {std::move(a), std::move(b)}};
}

BoolExpr BoolExpr::disj(BoolExpr a, BoolExpr b) {
    if (a.kind == Kind::True || b.kind == Kind::True) return constant(true);
    if (a.kind == Kind::False) return b;
    if (b.kind == Kind::False) return a;
    return BoolExpr{Kind::Or, 0, {std::move(a), std::move(b)}};
}

Guard to_guard(const BoolExpr& e, std::size_t num_aps) {
    using K = BoolExpr::Kind;
    switch (e.kind) {
        case K::True: return Guard::all(num_aps);
        case K::False: return Guard::none(num_aps);
        case K::Atom: return Guard::atom(num_aps, e.atom);
        case K::Not: return ~to_guard(e.kids.at(0), num_aps);
        case K::And: {
            Guard g = Guard::all(num_aps);
            for (const auto& k : e.kids) g &= to_guard(k, num_aps);
            return g;
        }
        case K::Or: {
            Guard g = Guard::none(num_aps);
            for (const auto& k : e.kids) g |= to_guard(k, num_aps);
            return g;
        }
    }
    return Guard::none(num_aps);
}

namespace {

// Shannon expansion on the highest AP first; `letters` are the admitted
// letters restricted to APs [0, depth).
BoolExpr shannon(const Guard& g, std::size_t depth, Letter fixed) {
    const std::size_t width = std::size_t{1} << depth;
    bool any = false, every = true;
    for (std::size_t l = 0; l < width; ++l) {
        bool in = g.contains(fixed | static_cast<Letter>(l));
        any = any || in;
        every = every && in;
    }
    if (!any) return BoolExpr::constant(false);
    if (every) return BoolExpr::constant(true);
    const std::size_t ap = depth - 1;
    BoolExpr hi = shannon(g, ap, fixed | (Letter{1} << ap));
    BoolExpr lo = shannon(g, ap, fixed);
    if (hi == lo) return hi;
    BoolExpr x = BoolExpr::var(ap);
    using K = BoolExpr::Kind;
    if (hi.kind == K::True) return BoolExpr::disj(std::move(x), std::move(lo));
    if (lo.kind == K::True) return BoolExpr::disj(BoolExpr::negation(std::move(x)), std::move(hi));
    if (hi.kind == K::False) return BoolExpr::conj(BoolExpr::negation(std::move(x)), std::move(lo));
    if (lo.kind == K::False) return BoolExpr::conj(std::move(x), std::move(hi));
    return BoolExpr::disj(BoolExpr::conj(x, std::move(hi)),
                          BoolExpr::conj(BoolExpr::negation(x), std::move(lo)));
}

}  // namespace

BoolExpr to_expr(const Guard& g) { return shannon(g, g.num_aps(), 0); }

std::string to_string(const BoolExpr& e, const std::function<std::string(std::size_t)>& atom_name) {
    using K = BoolExpr::Kind;
    auto wrap = [&](const BoolExpr& k, K parent) {
        std::string s = to_string(k, atom_name);
        bool compound = k.kind == K::And || k.kind == K::Or;
        return (compound && k.kind != parent) ? "(" + s + ")" : s;
    };
    switch (e.kind) {
        case K::True: return "t";
        case K::False: return "f";
        case K::Atom: return atom_name(e.atom);
        case K::Not: {
            const auto& k = e.kids.at(0);
            std::string s = to_string(k, atom_name);
            return (k.kind == K::And || k.kind == K::Or) ? "!(" + s + ")" : "!" + s;
        }
        case K::And:
        case K::Or: {
            std::string out;
            for (std::size_t i = 0; i < e.kids.size(); ++i) {
                if (i) out += e.kind == K::And ? " & " : " | ";
                out += wrap(e.kids[i], e.kind);
            }
            return out;
        }
    }
    return "f";
}

}  // namespace pecan
