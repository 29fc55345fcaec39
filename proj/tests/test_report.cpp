#include "fixtures.hpp"
#include "bnctl/report.hpp"

#include <doctest.h>

using namespace bnctl;

TEST_CASE("json document")
{
    const auto bn = fixtures::four_var();
    const auto atts = network_attractors(bn);
    const auto sol = all_pairs_control(bn, {atts[1], atts[2]}, Method::Decomposed);
    const auto doc = to_json(sol);
    CHECK(doc["method"] == "decomposed");
    CHECK(doc["attractors"] == nlohmann::json::parse(R"([["1100"],["1010"]])"));
    CHECK(doc["minimum_size"] == 2);
    CHECK(doc["solutions"] == nlohmann::json::parse("[[2,3],[2,4]]"));
    REQUIRE(doc["witnesses"].contains("1->2"));
    REQUIRE(doc["witnesses"].contains("2->1"));
    CHECK(doc["witnesses"]["1->2"]["from"] == "1100");
    CHECK(doc["per_block"].size() == 2);
    CHECK(doc["per_block"][1]["hat"] == nlohmann::json::parse("[3,4]"));
    CHECK(doc["per_block"][1]["solutions"] == nlohmann::json::parse("[[3],[4]]"));
    CHECK(nlohmann::json::parse(doc.dump()) == doc);
}

TEST_CASE("text report lines")
{
    const auto bn = fixtures::four_var();
    const auto sol = full_control(bn, Method::Global);
    const std::string text = to_text(sol);
    CHECK(text.find("method global\n") == 0);
    CHECK(text.find("minimum_size 2\n") != std::string::npos);
    CHECK(text.find("solution {2,3}\n") != std::string::npos);
    CHECK(text.find("solution {2,4}\n") == std::string::npos);
    CHECK(text.find("witness 3->1 {3} 1010 -> 1000\n") != std::string::npos);
}

TEST_CASE("bench row")
{
    const auto bn = fixtures::four_var();
    const auto row = bench_network(bn, max_in_degree(bn), 0);
    CHECK(row.lattice_nodes_global == 16);
    CHECK(row.lattice_nodes_blocks_sum == 8);
    const std::string csv = to_csv(row);
    CHECK(csv.rfind("4,3,0,", 0) == 0);
    CHECK(csv.substr(csv.size() - 5) == ",16,8");
}
