#include "fixtures.hpp"
#include "bnctl/verify.hpp"

#include <doctest.h>

#include <algorithm>
#include <set>

using namespace bnctl;
using fixtures::code;

namespace {

std::set<std::pair<unsigned, unsigned>> edges_1based(const BooleanNetwork& bn)
{
    std::set<std::pair<unsigned, unsigned>> out;
    for (auto [j, i] : bn.influence_edges())
        out.insert({j + 1, i + 1});
    return out;
}

}  // namespace

TEST_CASE("four-variable network parses with the expected influence graph")
{
    const auto bn = fixtures::four_var();
    CHECK(bn.size() == 4);
    CHECK(bn.names() == std::vector<std::string>{"x1", "x2", "x3", "x4"});
    const std::set<std::pair<unsigned, unsigned>> expected{
        {2, 1}, {1, 1}, {1, 2}, {2, 2}, {4, 3}, {2, 3}, {3, 3}, {3, 4}, {4, 4}};
    CHECK(edges_1based(bn) == expected);
}

TEST_CASE("identity network has a single self edge")
{
    const auto bn = parse_network("a = a");
    CHECK(bn.size() == 1);
    CHECK(edges_1based(bn) == std::set<std::pair<unsigned, unsigned>>{{1, 1}});
}

TEST_CASE("contradiction has empty semantic support")
{
    const auto bn = parse_network("a = b & !b\nb = a");
    CHECK(edges_1based(bn) == std::set<std::pair<unsigned, unsigned>>{{1, 2}});
    CHECK(bn.parents(0) == 0);
}

TEST_CASE("syntactic dependency keeps spurious edges")
{
    ParseOptions opt;
    opt.dependency = DependencyMode::Syntactic;
    const auto bn = parse_network("a = b & !b\nb = a", opt);
    CHECK(edges_1based(bn) == std::set<std::pair<unsigned, unsigned>>{{1, 2}, {2, 1}});
}

TEST_CASE("evaluation")
{
    const auto bn = fixtures::four_var();
    CHECK(eval(bn.function(2), State::parse("0101", full_mask(4))));
    CHECK(eval(bn.function(0), State::parse("1100", full_mask(4))));
    const auto k = parse_network("a = 0");
    CHECK_FALSE(k.function(0).eval(0));
    CHECK_FALSE(k.function(0).eval(1));
}

TEST_CASE("semantic support")
{
    const auto bn = fixtures::four_var();
    CHECK(semantic_support(bn.function(2), 4) == fixtures::idx({2, 3, 4}));
    CHECK(semantic_support(bn.function(0), 4) == fixtures::idx({1, 2}));
    const auto c = parse_network("x1 = x1 & !x1");
    CHECK(semantic_support(c.function(0), 1) == 0);
}

TEST_CASE("support above 20 variables is refused")
{
    std::string text;
    std::string rhs;
    for (int i = 1; i <= 21; ++i) {
        rhs += (i > 1 ? " | v" : "v") + std::to_string(i);
    }
    for (int i = 1; i <= 21; ++i)
        text += "v" + std::to_string(i) + " = " + (i == 1 ? rhs : "v" + std::to_string(i)) + "\n";
    CHECK_THROWS_AS(parse_network(text), SupportTooLarge);
}

TEST_CASE("precedence is not over and over or")
{
    const auto bn = parse_network("a = !a | a & b\nb = !(a | b)");
    // a = (!a) | (a & b)
    CHECK(bn.function(0).eval(0b00));
    CHECK_FALSE(bn.function(0).eval(0b01));
    CHECK(bn.function(0).eval(0b11));
    CHECK(bn.function(1).eval(0b00));
    CHECK_FALSE(bn.function(1).eval(0b10));
}

TEST_CASE("comments, blank lines and forward references")
{
    const auto bn = parse_network("# header\n\nfoo = bar # trailing\n  bar = 1\n");
    CHECK(bn.names() == std::vector<std::string>{"foo", "bar"});
    CHECK(bn.parents(0) == fixtures::idx({2}));
}

TEST_CASE("parse errors report positions")
{
    try {
        parse_network("a = a\nb = a &\n");
        FAIL("expected a parse error");
    } catch (const ParseError& e) {
        CHECK(e.line() == 2);
        CHECK(e.column() >= 7);
    }
    CHECK_THROWS_AS(parse_network("a = a\na = 1"), ParseError);
    CHECK_THROWS_AS(parse_network("a = c"), ParseError);
    CHECK_THROWS_AS(parse_network("1a = 1"), ParseError);
    CHECK_THROWS_AS(parse_network("a = (a"), ParseError);
    CHECK_THROWS_AS(parse_network(""), ParseError);

    ParseOptions small;
    small.max_variables = 2;
    CHECK_THROWS_AS(parse_network("a = a\nb = b\nc = c", small), ParseError);
}

TEST_CASE("serialize round trips")
{
    const auto bn = fixtures::four_var();
    CHECK(parse_network(serialize(bn)) == bn);
    CHECK(serialize(parse_network(serialize(bn))) == serialize(bn));

    const auto nested = parse_network("a = (a | b) | !(a & (b & a))\nb = !!b");
    CHECK(parse_network(serialize(nested)) == nested);
}

TEST_CASE("round trip and support properties on random networks")
{
    for (std::uint64_t seed = 1; seed <= 60; ++seed) {
        const verify::RandomBNSpec spec{6, 3, seed, 0.5};
        const auto bn = verify::generate_random_bn(spec);
        CHECK(parse_network(serialize(bn)) == bn);
        for (unsigned i = 0; i < bn.size(); ++i) {
            const VarMask sem = bn.parents(i);
            CHECK((sem & ~bn.function(i).syntactic_support()) == 0);
            CHECK(width_of(sem) <= spec.k);
            // every semantic edge has a witnessing pair of states
            for (unsigned j : mask_to_indices(sem)) {
                const StateCode bit = StateCode{1} << (j - 1);
                bool witnessed = false;
                for (StateCode s = 0; s < (StateCode{1} << bn.size()) && !witnessed; ++s)
                    witnessed = bn.function(i).eval(s) != bn.function(i).eval(s ^ bit);
                CHECK(witnessed);
            }
            // the compiled table agrees with the tree
            for (StateCode s = 0; s < (StateCode{1} << bn.size()); ++s)
                CHECK(bn.update(i, s) == bn.function(i).eval(s));
        }
    }
}
