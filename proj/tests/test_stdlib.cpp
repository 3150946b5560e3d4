#include "doctest.h"

#include "pecan/stdlib.hpp"
#include "support/random_automata.hpp"

#include <bit>

using namespace pecan;
using namespace pecan::stdlib;
using pecan::testing::encode_naturals;

TEST_CASE("nat type accepts exactly finite-support tracks") {
    auto nat = build_nat_type("x");
    CHECK(accepts(nat, encode_naturals({{"x", 6}})));
    CHECK(accepts(nat, encode_naturals({{"x", 0}})));
    CHECK_FALSE(accepts(nat, LassoWord{{}, {{"x"}}}));
    CHECK_FALSE(accepts(nat, LassoWord{{{}}, {{"x"}, {}}}));
}

TEST_CASE("adder") {
    auto add = build_bin_add("x", "y", "z");
    CHECK(accepts(add, encode_naturals({{"x", 3}, {"y", 5}, {"z", 8}})));
    CHECK_FALSE(accepts(add, encode_naturals({{"x", 1}, {"y", 1}, {"z", 3}})));
    for (unsigned n = 0; n < 16; ++n) CHECK(accepts(add, encode_naturals({{"x", 0}, {"y", n}, {"z", n}})));
    for (unsigned a = 0; a <= 64; ++a)
        for (unsigned b = 0; b <= 64; ++b) {
            CHECK(accepts(add, encode_naturals({{"x", a}, {"y", b}, {"z", a + b}})));
            const unsigned wrong = (a * 7 + b * 3) % 130;
            if (wrong != a + b) CHECK_FALSE(accepts(add, encode_naturals({{"x", a}, {"y", b}, {"z", wrong}})));
        }
}

TEST_CASE("less is a strict total order on 0..64") {
    auto less = build_bin_less("x", "y");
    auto lt = [&](unsigned a, unsigned b) { return accepts(less, encode_naturals({{"x", a}, {"y", b}})); };
    CHECK(lt(2, 5));
    CHECK_FALSE(lt(5, 2));
    std::vector<std::vector<bool>> r(65, std::vector<bool>(65));
    for (unsigned a = 0; a <= 64; ++a)
        for (unsigned b = 0; b <= 64; ++b) r[a][b] = lt(a, b);
    for (unsigned a = 0; a <= 64; ++a) {
        CHECK_FALSE(r[a][a]);
        for (unsigned b = 0; b <= 64; ++b) {
            if (a != b) CHECK(r[a][b] != r[b][a]);
            CHECK(r[a][b] == (a < b));
        }
    }
    for (unsigned a = 0; a <= 64; a += 3)
        for (unsigned b = 0; b <= 64; b += 2)
            for (unsigned c = 0; c <= 64; c += 5)
                if (r[a][b] && r[b][c]) CHECK(r[a][c]);
}

TEST_CASE("equality and zero") {
    auto eq = build_equal("x", "y");
    CHECK(accepts(eq, encode_naturals({{"x", 7}, {"y", 7}})));
    CHECK_FALSE(accepts(eq, encode_naturals({{"x", 7}, {"y", 6}})));
    auto zero = build_zero("z");
    CHECK(accepts(zero, encode_naturals({{"z", 0}})));
    for (unsigned n = 1; n < 16; ++n) CHECK_FALSE(accepts(zero, encode_naturals({{"z", n}})));
    CHECK_FALSE(accepts(zero, LassoWord{{}, {{"z"}}}));
}

TEST_CASE("Thue-Morse values are popcount parities") {
    auto t = build_thue_morse("i");
    auto at = [&](unsigned i) { return accepts(t, encode_naturals({{"i", i}})); };
    const bool first[] = {false, true, true, false, true, false, false, true};
    for (unsigned i = 0; i < 8; ++i) CHECK(at(i) == first[i]);
    for (unsigned i = 0; i <= 1024; ++i) CHECK(at(i) == (std::popcount(i) % 2 == 1));
    for (unsigned i = 0; i <= 32; ++i) CHECK(at(2 * i) == at(i));
}

TEST_CASE("builtins by name") {
    CHECK(build_builtin("bin_less", {"p", "q"}).aps() == std::vector<std::string>{"p", "q"});
    CHECK_THROWS((void)build_builtin("bin_less", {"p"}));
    CHECK_THROWS((void)build_builtin("nope", {"p"}));
    CHECK(prelude_source().find("Structure nat") != std::string::npos);
}
