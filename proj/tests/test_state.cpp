#include "fixtures.hpp"

#include <doctest.h>

#include <random>

using namespace bnctl;
using fixtures::code;

TEST_CASE("state strings put variable 1 leftmost")
{
    const State s = State::parse("1100", full_mask(4));
    CHECK(s.value(0));
    CHECK(s.value(1));
    CHECK_FALSE(s.value(2));
    CHECK(s.code() == 0b0011u);
    CHECK(s.to_string() == "1100");
    CHECK_THROWS(State::parse("110", full_mask(4)));
    CHECK_THROWS(State::parse("11x0", full_mask(4)));
}

TEST_CASE("deposit and extract are inverse on the scope")
{
    const VarMask scope = fixtures::idx({2, 3, 4});
    for (StateCode local = 0; local < 8; ++local)
        CHECK(extract(deposit(local, scope), scope) == local);
    CHECK(deposit(0b101, scope) == 0b1010u);
}

TEST_CASE("projection onto a block")
{
    const VarMask all = full_mask(4);
    CHECK(project(State::parse("1100", all), fixtures::idx({3, 4})).to_string() == "00");
    CHECK(project(State::parse("1010", all), fixtures::idx({1, 2})).to_string() == "10");
    const State s = State::parse("0110", all);
    CHECK(project(s, all) == s);
}

TEST_CASE("cross of states")
{
    const VarMask b1 = fixtures::idx({1, 2});
    const VarMask b2 = fixtures::idx({2, 3, 4});
    const auto joined = cross(State::parse("11", b1), State::parse("100", b2));
    REQUIRE(joined.has_value());
    CHECK(joined->to_string() == "1100");
    CHECK(joined->scope() == full_mask(4));

    const State s = State::parse("10", b1);
    CHECK(cross(s, s) == s);
    CHECK_FALSE(cross(State::parse("11", b1), State::parse("010", b2)).has_value());
}

TEST_CASE("cross and project round trip on random states")
{
    std::mt19937 rng(3);
    for (int t = 0; t < 200; ++t) {
        const VarMask a = rng() & 0xFF;
        const VarMask b = rng() & 0xFF;
        if (a == 0 || b == 0)
            continue;
        const StateCode g = rng() & 0xFF;
        const State sa(a, extract(g, a));
        const State sb(b, extract(g, b));
        const auto joined = cross(sa, sb);
        REQUIRE(joined.has_value());
        CHECK(project(*joined, a) == sa);
        CHECK(project(*joined, b) == sb);
    }
}

TEST_CASE("cross of state sets keeps only agreeing pairs")
{
    const VarMask b1 = fixtures::idx({1, 2});
    const VarMask b2 = fixtures::idx({2, 3});
    const StateSet left = StateSet::from_strings(b1, {"10", "11"});
    const StateSet right = StateSet::from_strings(b2, {"00", "11"});
    const StateSet joined = cross(left, right);
    CHECK(joined.scope() == fixtures::idx({1, 2, 3}));
    CHECK(joined.strings() == std::vector<std::string>{"100", "111"});

    const StateSet unit = StateSet::full(0);
    CHECK(unit.size() == 1);
    CHECK(cross(unit, left) == left);
}

TEST_CASE("state set basics")
{
    StateSet s(full_mask(3));
    CHECK(s.empty());
    s.insert(code("101"));
    s.insert(code("001"));
    CHECK(s.size() == 2);
    CHECK(s.strings() == std::vector<std::string>{"001", "101"});
    CHECK(s.is_subset_of(StateSet::full(full_mask(3))));
    s.erase(code("001"));
    CHECK(s.size() == 1);
    CHECK(StateSet::full(full_mask(10)).size() == 1024);
    CHECK_THROWS(s |= StateSet(full_mask(2)));
}

TEST_CASE("cylinder lifts a set to a larger scope")
{
    const StateSet s = StateSet::from_strings(fixtures::idx({1}), {"1"});
    const StateSet c = cylinder(s, full_mask(2));
    CHECK(c.strings() == std::vector<std::string>{"10", "11"});
}

TEST_CASE("index masks are 1-based")
{
    CHECK(mask_to_indices(0b1010) == std::vector<unsigned>{2, 4});
    CHECK(indices_to_mask({1, 3}) == 0b101u);
    CHECK(full_mask(24) == 0xFFFFFFu);
}
