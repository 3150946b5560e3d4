#include "doctest.h"

#include "pecan/syntax.hpp"

using namespace pecan;
using namespace pecan::ast;
using pecan::syntax::desugar;
using pecan::syntax::parse;
using pecan::syntax::parse_pred;
using pecan::syntax::print;

namespace {

const char* kNatExample = R"(
Structure nat defining {
    "adder": bin_add(any, any, any),
    "less": bin_less(any, any)
}
Restrict a, b are nat.
Theorem ("", { forall a,b. a < b <=> bin_less(a,b)}).
)";

std::string round(const std::string& src) { return print(parse(src)); }

std::string core(const std::string& pred, const syntax::Restrictions& r = {}) {
    return print(desugar(parse_pred(pred), r));
}

}  // namespace

TEST_CASE("directives of the nat example") {
    Program p = parse(kNatExample);
    REQUIRE(p.items.size() == 3);
    auto& s = std::get<StructureDecl>(p.items[0]);
    CHECK(s.head.name == "nat");
    REQUIRE(s.defs.size() == 2);
    CHECK(s.defs[0].first == "adder");
    CHECK(s.defs[0].second.target == "bin_add");
    CHECK(s.defs[0].second.slots.size() == 3);
    CHECK_FALSE(s.defs[0].second.slots[0].has_value());
    auto& r = std::get<RestrictDecl>(p.items[1]);
    CHECK(r.vars == std::vector<std::string>{"a", "b"});
    CHECK(r.type.name == "nat");
    auto& t = std::get<TheoremDecl>(p.items[2]);
    CHECK(t.name.empty());
    CHECK(print(t.body) == "(forall a, b. (a < b <=> bin_less(a, b)))");
}

TEST_CASE("other directive forms") {
    Program p = parse(R"(
        Restrict i is ostrowski(a).
        #load "add.aut" as plus(x, y, z).
        #save_aut "out.aut" plus.
        #builtin "bin_less" as lt(x is nat, y).
        P(x, y is nat) := x = y
        Q := true.
    )");
    REQUIRE(p.items.size() == 6);
    CHECK(std::get<RestrictDecl>(p.items[0]).type == TypeTag{"ostrowski", {"a"}});
    CHECK(std::get<LoadDecl>(p.items[1]).params.size() == 3);
    CHECK(std::get<SaveDecl>(p.items[2]).name == "plus");
    auto& b = std::get<BuiltinDecl>(p.items[3]);
    CHECK(b.params[0].type->name == "nat");
    CHECK_FALSE(b.params[1].type);
    auto& d = std::get<PredicateDef>(p.items[4]);
    CHECK(d.params[1].type == TypeTag{"nat", {}});
    CHECK(std::get<PredicateDef>(p.items[5]).params.empty());
}

TEST_CASE("operator precedence") {
    CHECK(print(parse_pred("a | b(x) & !c(x)")) == "(a | (b(x) & !c(x)))" );
}

TEST_CASE("syntax errors carry positions") {
    CHECK_THROWS_AS(parse_pred("x +"), SyntaxError);
    CHECK_THROWS_AS(parse("Theorem (\"t\", { true }"), SyntaxError);
    CHECK_THROWS_AS(parse("#frobnicate \"x\"."), SyntaxError);
    CHECK_THROWS_AS(parse("P(x) := (x = 1"), SyntaxError);
    CHECK_THROWS_AS(parse("Theorem (\"t\", { x < }).\n"), SyntaxError);
    try {
        parse("P(x) :=\n  x < ");
        FAIL("no error");
    } catch (const SyntaxError& e) {
        CHECK(e.loc().line == 2);
    }
}

TEST_CASE("parenthesized predicates and expressions") {
    CHECK(print(parse_pred("(a + b) = c")) == "(a + b) = c");
    CHECK(print(parse_pred("(a < b) & (P(x))")) == "(a < b & P(x))");
    CHECK(print(parse_pred("((x = 1))")) == "x = 1");
    CHECK(print(parse_pred("!(x < y) | x is nat")) == "(!x < y | (x is nat))");
    CHECK(print(parse_pred("T[2*i+1] = T[i..j]")) == "T[(2*i + 1)] = T[i..j]");
    CHECK(print(parse_pred("if x = 1 then y = 2")) == "(x = 1 => y = 2)");
}

TEST_CASE("parse, print, parse is stable") {
    const char* sources[] = {
        kNatExample,
        "P(x is nat, y) := exists z is nat. x + z = y & !(z = 0).",
        "Theorem (\"q\\\"uote\", { forall x. exists y. y + y = x | y + y + 1 = x }).",
        "Q(i) := T[i] = 1 & T[i] != T[i + 1] & T[i..i+2] = T[i+3..i+5].",
        "R(x) := if x < 3 then x >= 1 <=> (x <= 2 => x > 0).",
        "S(a, b) := 3*a - b = f(a, 2) & $C[a] = 0.",
    };
    for (const char* src : sources) {
        std::string once = round(src);
        CHECK(round(once) == once);
    }
}

TEST_CASE("desugaring") {
    CHECK(core("if x = 1 then y = 2") == "(!x = 1 | y = 2)");
    CHECK(core("3*x = y") == "((x + x) + x) = y");
    CHECK(core("0*x = y") == "0 = y");
    CHECK(core("T[i] = T[j]") == "((!T(i) | T(j)) & (!T(j) | T(i)))");
    CHECK(core("T[i] = 0") == "!T(i)");
    CHECK(core("1 = T[i]") == "T(i)");
    CHECK(core("T[i] != 1") == "!T(i)");
    CHECK(core("T[i] != T[j]") == "!((!T(i) | T(j)) & (!T(j) | T(i)))");
    CHECK(core("a <=> b(x)") == "((!a | b(x)) & (!b(x) | a))" );
    CHECK(core("x <= y") == "(x < y | x = y)");
    CHECK(core("x > y") == "y < x");
    CHECK(core("x != y") == "!x = y");
    CHECK(core("forall x. x = x") == "!(exists x. !x = x)");
    CHECK(core("forall x, y. x = y") == "!(exists x. (exists y. !x = y))");
    CHECK(core("!!(x = y)") == "x = y");
    CHECK(core("y is ostrowski(a)") == "ostrowski(a, y)");
    CHECK(core("exists x. x < y", {{"x", TypeTag{"nat", {}}}}) == "(exists x is nat. x < y)");
    CHECK(core("exists x is foo. x < y", {{"x", TypeTag{"nat", {}}}}) == "(exists x is foo. x < y)");
    CHECK(core("P[i..j] = P[k..l]", {{"i", TypeTag{"nat", {}}}}) ==
          "((j + k) = (i + l) & !(exists n#0 is nat. !(!(i + n#0) < j | "
          "((!P((i + n#0)) | P((k + n#0))) & (!P((k + n#0)) | P((i + n#0)))))))");
    CHECK_THROWS_AS(core("P[i..j] = P[k..l]"), SyntaxError);
    CHECK_THROWS_AS(core("T[i] < 1"), SyntaxError);
    CHECK_THROWS_AS(core("T[i] + 1 = 2"), SyntaxError);
    CHECK_THROWS_AS(core("T[i] = x"), SyntaxError);
}

TEST_CASE("desugared programs are core and keep free variables") {
    const char* preds[] = {"forall x. exists y. x < y <=> y > x", "if a then b(x) | c(y)",
                           "T[i..j] = T[k..l] & 2*k >= i", "!(a(x) <=> !b(y)) => forall z. z != x"};
    syntax::Restrictions r{{"i", TypeTag{"nat", {}}}};
    for (const char* src : preds) {
        PredPtr p = parse_pred(src);
        PredPtr d = desugar(p, r);
        CHECK(syntax::is_core(d));
        auto before = free_vars(p), after = free_vars(d);
        std::sort(before.begin(), before.end());
        std::sort(after.begin(), after.end());
        CHECK(before == after);
    }
}

TEST_CASE("restrictions apply in order") {
    Program p = syntax::desugar(parse(R"(
        P(x) := exists y. x < y.
        Restrict x, y are nat.
        Q(x) := exists y. x < y.
    )"));
    auto& first = std::get<PredicateDef>(p.items[0]);
    auto& second = std::get<PredicateDef>(p.items[2]);
    CHECK_FALSE(first.params[0].type);
    CHECK(print(first.body) == "(exists y. x < y)");
    CHECK(second.params[0].type == TypeTag{"nat", {}});
    CHECK(print(second.body) == "(nat(x) & (exists y is nat. x < y))");
}
