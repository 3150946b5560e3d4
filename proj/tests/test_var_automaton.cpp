#include "doctest.h"

#include "pecan/errors.hpp"
#include "pecan/stdlib.hpp"
#include "pecan/var_automaton.hpp"
#include "support/random_automata.hpp"

using namespace pecan;
using pecan::testing::encode_naturals;
using pecan::testing::random_automaton;
using pecan::testing::random_lasso;

namespace {

// x = n over one track, with the nat type.
PecanAutomaton equals_constant(const std::string& var, const std::string& ap, unsigned n) {
    BuchiAutomaton a({ap});
    StateId prev = 0;
    for (unsigned v = n; v; v >>= 1) {
        StateId next = a.add_state();
        a.add_edge(prev, next, (v & 1U) ? a.guard_atom(ap) : ~a.guard_atom(ap));
        prev = next;
    }
    a.set_accepting(prev);
    a.add_edge(prev, prev, ~a.guard_atom(ap));
    return PecanAutomaton({{var, {ap}}}, a);
}

PecanAutomaton on_vars(BuchiAutomaton a, const std::vector<std::string>& vars) {
    VariableMap v;
    for (std::size_t i = 0; i < vars.size(); ++i) v.insert(vars[i], {a.aps()[i]});
    return PecanAutomaton(std::move(v), std::move(a));
}

// Rewrites a lasso over the APs of `from` into one over the APs of `to`,
// matching tracks by variable.
LassoWord retrack(const LassoWord& w, const VariableMap& from, const VariableMap& to) {
    LassoWord out;
    auto conv = [&](const Valuation& v) {
        Valuation r;
        for (const auto& [var, aps] : from)
            for (std::size_t i = 0; i < aps.size(); ++i)
                if (v.count(aps[i]) && to.contains(var)) r.insert(to.at(var)[i]);
        return r;
    };
    for (const auto& v : w.prefix) out.prefix.push_back(conv(v));
    for (const auto& v : w.cycle) out.cycle.push_back(conv(v));
    return out;
}

}  // namespace

TEST_CASE("variable maps stay disjoint") {
    VariableMap v{{"x", {"a"}}};
    CHECK_THROWS_AS(v.insert("y", {"a"}), CollisionError);
    CHECK_THROWS_AS(v.insert("y", {"b", "b"}), CollisionError);
    v.insert("x", {"c"});
    CHECK(v.at("x") == std::vector<std::string>{"c"});
    CHECK(*v.owner("c") == "x");
    CHECK(v.owner("a") == nullptr);
    CHECK_THROWS_AS((void)v.at("zz"), UnknownVariableError);
}

TEST_CASE("merge_union") {
    VariableMap x{{"x", {"a"}}}, y{{"y", {"b"}}}, xb{{"x", {"b"}}};
    CHECK(merge_union(x, y) == VariableMap{{"x", {"a"}}, {"y", {"b"}}});
    CHECK(merge_union(x, x) == x);
    CHECK_THROWS_AS((void)merge_union(x, xb), ConflictError);
    CHECK_THROWS_AS((void)merge_union(x, x, true), ConflictError);
}

TEST_CASE("biased_merge") {
    ApRegistry fresh;
    auto [u, theta] = biased_merge({{"x", {"a", "b"}}}, {{"x", {"c", "d"}}}, fresh);
    CHECK(u == VariableMap{{"x", {"a", "b"}}});
    CHECK(theta == Substitution{{"c", "a"}, {"d", "b"}});

    auto [u2, theta2] = biased_merge({{"x", {"a"}}}, {{"y", {"b"}}}, fresh);
    CHECK(u2 == VariableMap{{"x", {"a"}}, {"y", {"b"}}});
    CHECK(theta2.empty());

    VariableMap abc{{"x", {"a", "b", "c"}}};
    CHECK(abc.apply({{"a", "d"}, {"c", "e"}}) == VariableMap{{"x", {"d", "b", "e"}}});

    auto [u3, theta3] = biased_merge({{"x", {"a"}}}, {{"y", {"a"}}}, fresh);
    CHECK(u3.at("x") == std::vector<std::string>{"a"});
    CHECK(u3.at("y") != std::vector<std::string>{"a"});
    CHECK(theta3.at("a") == u3.at("y")[0]);

    CHECK_THROWS_AS((void)biased_merge({{"x", {"a"}}}, {{"x", {"b", "c"}}}, fresh), ArityError);
}

TEST_CASE("registry hands out stable and fresh APs") {
    ApRegistry r;
    auto x = r.aps_for("x");
    CHECK(r.aps_for("x") == x);
    CHECK(r.fresh() != x);
    CHECK(r.fresh(2).size() == 2);
    CHECK_THROWS_AS((void)r.aps_for("x", 2), ArityError);
}

TEST_CASE("PecanAutomaton requires its APs") {
    CHECK_THROWS_AS(PecanAutomaton({{"x", {"a"}}}, BuchiAutomaton::universal({"b"})), UnknownApError);
    CHECK(is_empty(PecanAutomaton::bottom().automaton));
    CHECK_FALSE(is_empty(PecanAutomaton::top().automaton));
}

TEST_CASE("conjoin synchronizes shared variables") {
    ApRegistry fresh;
    auto zero = equals_constant("x", "a", 0), one = equals_constant("x", "b", 1);
    auto both = conjoin(zero, one, fresh);
    CHECK(both.varmap.size() == 1);
    CHECK(is_empty(both.automaton));

    auto also_zero = equals_constant("x", "c", 0);
    CHECK_FALSE(is_empty(conjoin(zero, also_zero, fresh).automaton));

    auto y_one = equals_constant("y", "a", 1);
    auto pair = conjoin(zero, y_one, fresh);
    CHECK(pair.varmap.size() == 2);
    LassoWord w = encode_naturals({{pair.varmap.at("x")[0], 0}, {pair.varmap.at("y")[0], 1}});
    CHECK(accepts(pair.automaton, w));
}

TEST_CASE("conjoin and disjoin against the lasso oracle") {
    std::mt19937_64 rng(31);
    ApRegistry fresh;
    for (int i = 0; i < 40; ++i) {
        auto ra = random_automaton(rng, {}, 2), rb = random_automaton(rng, {}, 2);
        // a over (x, y) on APs p, q; b over (y, z) on APs p, q as well.
        PecanAutomaton a({{"x", {"p"}}, {"y", {"q"}}}, ra);
        PecanAutomaton b({{"y", {"p"}}, {"z", {"q"}}}, rb);
        auto c = conjoin(a, b, fresh), d = disjoin(a, b, fresh);
        auto c_self = disjoin(a, a, fresh);
        CHECK(c.varmap.size() == 3);
        for (const auto& [var, aps] : c.varmap)
            for (const auto& ap : aps) CHECK(c.automaton.ap_index(ap));
        for (int j = 0; j < 30; ++j) {
            auto w = random_lasso(rng, c.automaton.aps());
            bool in_a = accepts(ra, retrack(w, c.varmap, a.varmap));
            bool in_b = accepts(rb, retrack(w, c.varmap, b.varmap));
            CHECK(accepts(c.automaton, w) == (in_a && in_b));
            CHECK(accepts(d.automaton, retrack(w, c.varmap, d.varmap)) == (in_a || in_b));
            CHECK(accepts(c_self.automaton, retrack(w, c.varmap, c_self.varmap)) == in_a);
        }
    }
}

TEST_CASE("the size bias does not change the language") {
    std::mt19937_64 rng(8);
    ApRegistry fresh;
    for (int i = 0; i < 30; ++i) {
        auto ra = random_automaton(rng, {}, 2), rb = random_automaton(rng, {}, 2);
        PecanAutomaton a({{"x", {"p"}}, {"y", {"q"}}}, ra);
        PecanAutomaton b({{"y", {"p"}}, {"z", {"q"}}}, rb);
        auto ab = conjoin(a, b, fresh), ba = conjoin(b, a, fresh);
        for (int j = 0; j < 30; ++j) {
            auto w = random_lasso(rng, ab.automaton.aps());
            CHECK(accepts(ab.automaton, w) == accepts(ba.automaton, retrack(w, ab.varmap, ba.varmap)));
        }
    }
}

TEST_CASE("conjoin with top is the identity") {
    ApRegistry fresh;
    auto x0 = equals_constant("x", "a", 5);
    auto c = conjoin(x0, PecanAutomaton::top(), fresh);
    for (unsigned n = 0; n < 16; ++n)
        CHECK(accepts(c.automaton, encode_naturals({{c.varmap.at("x")[0], n}})) == (n == 5));
}

TEST_CASE("negate") {
    auto less = on_vars(stdlib::build_bin_less("a", "b"), {"x", "y"});
    auto nless = negate(less);
    CHECK(nless.varmap == less.varmap);
    CHECK(accepts(nless.automaton, encode_naturals({{"a", 5}, {"b", 2}})));
    CHECK_FALSE(accepts(nless.automaton, encode_naturals({{"a", 2}, {"b", 5}})));
    CHECK(is_empty(negate(PecanAutomaton::top()).automaton));

    std::mt19937_64 rng(4);
    for (int i = 0; i < 20; ++i) {
        auto a = on_vars(random_automaton(rng, {}, 2), {"x", "y"});
        auto nn = negate(negate(a));
        for (int j = 0; j < 20; ++j) {
            auto w = random_lasso(rng, a.automaton.aps());
            CHECK(accepts(nn.automaton, w) == accepts(a.automaton, w));
        }
    }
}

TEST_CASE("rename_var") {
    auto less = on_vars(stdlib::build_bin_less("a", "b"), {"z", "w"});
    auto same = rename_var(less, "z", "z", {"a"});
    CHECK(same.varmap == less.varmap);
    CHECK(same.automaton.aps() == less.automaton.aps());

    auto renamed = rename_var(less, "z", "y", {"c"});
    CHECK(renamed.varmap == VariableMap{{"y", {"c"}}, {"w", {"b"}}});
    for (unsigned m = 0; m < 8; ++m)
        for (unsigned n = 0; n < 8; ++n)
            CHECK(accepts(renamed.automaton, encode_naturals({{"c", m}, {"b", n}})) == (m < n));

    auto back = rename_var(renamed, "y", "z", {"a"});
    std::mt19937_64 rng(12);
    for (int j = 0; j < 30; ++j) {
        auto w = random_lasso(rng, less.automaton.aps());
        CHECK(accepts(back.automaton, w) == accepts(less.automaton, w));
    }

    CHECK_THROWS_AS((void)rename_var(less, "z", "w", {"c"}), CollisionError);
    CHECK_THROWS_AS((void)rename_var(less, "z", "y", {"c", "d"}), ArityError);
    CHECK_THROWS_AS((void)rename_var(less, "q", "y", {"c"}), UnknownVariableError);
}

TEST_CASE("project_var") {
    auto add = on_vars(stdlib::build_bin_add("a", "b", "c"), {"x", "y", "z"});
    auto sums = project_var(add, "z");
    CHECK(sums.varmap == VariableMap{{"x", {"a"}}, {"y", {"b"}}});
    for (unsigned m = 0; m < 12; ++m)
        for (unsigned n = 0; n < 12; ++n) CHECK(accepts(sums.automaton, encode_naturals({{"a", m}, {"b", n}})));
    CHECK_FALSE(is_empty(project_var(add, "x").automaton));

    PecanAutomaton loose({{"x", {"a"}}, {"u", {"u0"}}}, BuchiAutomaton::universal({"a", "u0"}));
    auto shrunk = project_var(loose, "u");
    CHECK(shrunk.varmap == VariableMap{{"x", {"a"}}});
    CHECK_THROWS_AS((void)project_var(add, "nope"), UnknownVariableError);
}
