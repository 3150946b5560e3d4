#include "doctest.h"

#include "pecan/driver.hpp"
#include "pecan/syntax.hpp"
#include "pecan/typecheck.hpp"

using namespace pecan;
using namespace pecan::ast;
using typecheck::Checker;

namespace {

Template tmpl(std::string target, std::vector<std::optional<std::string>> slots) {
    return Template{std::move(target), std::move(slots)};
}

TypeTag nat() { return TypeTag{"nat", {}}; }

}  // namespace

TEST_CASE("template params and implicits") {
    auto f = tmpl("f", {"a", std::nullopt, "b", std::nullopt});
    CHECK(typecheck::template_params(f) == std::vector<int>{2, 4});
    CHECK(typecheck::template_implicits(f) == std::vector<int>{1, 3});
    auto g = tmpl("f", {std::nullopt});
    CHECK(typecheck::template_params(g) == std::vector<int>{1});
    CHECK(typecheck::template_implicits(g).empty());
}

TEST_CASE("call resolution through the nat structure") {
    driver::Session s;
    Checker c(s.registry());

    auto less = c.resolve_call("less", {nat(), nat()}, {});
    CHECK(less.target == "bin_less");
    REQUIRE(less.slots.size() == 2);
    CHECK(less.slots[0].arg == 0);
    CHECK(less.slots[1].arg == 1);

    auto adder = c.resolve_call("adder", {nat(), nat(), nat()}, {});
    CHECK(adder.target == "bin_add");
    REQUIRE(adder.slots.size() == 3);
    for (int i = 0; i < 3; ++i) CHECK(adder.slots[static_cast<std::size_t>(i)].arg == i);

    // No structure defines bin_less itself, so it resolves to itself.
    auto direct = c.resolve_call("bin_less", {nat(), nat()}, {});
    CHECK(direct.target == "bin_less");

    CHECK_THROWS_AS(c.resolve_call("nowhere", {nat()}, {}), TypeError);
    CHECK_THROWS_AS(c.resolve_call("bin_less", {nat()}, {}), TypeError);
}

TEST_CASE("implicit slots receive structure parameters") {
    driver::Session s;
    s.run_source(R"(
        capped(k is nat, x is nat) := x < k.
        bound(k is nat, x is nat, y is nat) := x < y & y < k.
        Structure capped(k) defining { "less": bound(k, any, any), "adder": bin_add(any, any, any) }.
    )");
    Checker c(s.registry());
    auto plan = c.resolve_call("less", {TypeTag{"capped", {"m"}}, TypeTag{"capped", {"m"}}}, {});
    CHECK(plan.target == "bound");
    REQUIRE(plan.slots.size() == 3);
    CHECK(plan.slots[0].arg == -1);
    CHECK(plan.slots[0].var == "m");
    CHECK(plan.slots[1].arg == 0);
    CHECK(plan.slots[2].arg == 1);
}

TEST_CASE("expression typing") {
    driver::Session s;
    Checker c(s.registry());
    typecheck::TypeEnv gamma{{"x", nat()}};

    CHECK(c.type_expr(gamma, make_var("x")) == nat());
    auto sum = make_binary(ExprKind::Add, make_var("x"), make_int(1));
    CHECK(c.type_expr(gamma, sum) == nat());
    CHECK(sum->args[1]->type == nat());
    CHECK(sum->call.target == "bin_add");

    CHECK_THROWS_AS(c.type_expr({}, make_var("x")), TypeError);
    // A literal without a numeric context has no type.
    CHECK_THROWS_AS(c.type_expr({}, make_int(3)), TypeError);
}

TEST_CASE("proposition typing") {
    driver::Session s;
    Checker c(s.registry());
    typecheck::TypeEnv gamma{{"a", nat()}, {"b", nat()}};

    auto lt = make_rel(RelOp::Lt, make_var("a"), make_var("b"));
    CHECK_NOTHROW(c.check_prop(gamma, lt));
    CHECK(lt->call.target == "bin_less");

    auto lit = std::make_shared<Pred>();
    lit->kind = PredKind::Aut;
    lit->literal = std::make_shared<const PecanAutomaton>(PecanAutomaton::top());
    CHECK_NOTHROW(c.check_prop({}, lit));

    CHECK_THROWS_AS(c.check_prop({{"a", nat()}}, make_rel(RelOp::Lt, make_var("a"), make_var("w"))), TypeError);
}

TEST_CASE("program-level checks") {
    driver::Session s;
    CHECK_THROWS_AS(s.run_source("p(x is nat) := p(x)."), TypeError);
    CHECK_THROWS_AS(s.run_source("q(x is nat) := undefined_thing(x)."), TypeError);
    CHECK_THROWS_AS(s.run_source("Theorem (\"open\", { x = x })."), TypeError);
    s.run_source("r(x is nat) := x = 0.");
    CHECK_THROWS_AS(s.run_source("r(x is nat) := x = 1."), TypeError);
    // Redefining a structure replaces it.
    CHECK_NOTHROW(s.run_source(R"(Structure nat defining { "adder": bin_add(any, any, any), "less": bin_less(any, any) }.)"));
}

TEST_CASE("numeric structures get a default one") {
    driver::Session s;
    CHECK(s.registry().structures.at("nat").numeric);
    CHECK(s.registry().predicates.count(typecheck::default_one_name("nat")) == 1);
}
