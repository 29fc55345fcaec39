#include "bnctl/report.hpp"

#include <chrono>
#include <cstdio>
#include <sstream>

namespace bnctl {

namespace {

std::string set_text(VarMask m)
{
    std::string out = "{";
    bool first = true;
    for (unsigned i : mask_to_indices(m)) {
        if (!first)
            out += ',';
        first = false;
        out += std::to_string(i);
    }
    return out + "}";
}

nlohmann::json attractor_list(const std::vector<StateSet>& attractors)
{
    auto arr = nlohmann::json::array();
    for (const auto& a : attractors)
        arr.push_back(a.strings());
    return arr;
}

}  // namespace

std::string pair_key(std::size_t from, std::size_t to)
{
    return std::to_string(from + 1) + "->" + std::to_string(to + 1);
}

std::string witness_key(const Witness& w)
{
    // target control has a single pair starting from a free state
    if (w.from_attractor == w.to_attractor)
        return "s->" + std::to_string(w.to_attractor + 1);
    return pair_key(w.from_attractor, w.to_attractor);
}

nlohmann::json to_json(const ControlSolution& sol)
{
    nlohmann::json doc;
    doc["method"] = to_string(sol.method);
    doc["attractors"] = attractor_list(sol.attractors);
    doc["minimum_size"] = sol.minimum_size;
    auto solutions = nlohmann::json::array();
    for (const auto& c : sol.solutions)
        solutions.push_back(c.indices());
    doc["solutions"] = solutions;

    auto witnesses = nlohmann::json::object();
    for (const auto& w : sol.witnesses)
        witnesses[witness_key(w)] = {
            {"control", w.control.indices()}, {"from", w.from.to_string()}, {"to", w.to.to_string()}};
    doc["witnesses"] = witnesses;

    auto blocks = nlohmann::json::array();
    for (const auto& b : sol.per_block) {
        auto block_solutions = nlohmann::json::array();
        for (const auto& c : b.cover.solutions)
            block_solutions.push_back(c.indices());
        blocks.push_back({{"block", mask_to_indices(b.nodes)}, {"hat", mask_to_indices(b.hat)}, {"solutions", block_solutions}});
    }
    doc["per_block"] = blocks;
    return doc;
}

std::string to_text(const ControlSolution& sol)
{
    std::ostringstream out;
    out << "method " << to_string(sol.method) << '\n';
    for (std::size_t i = 0; i < sol.attractors.size(); ++i) {
        out << "attractor " << i + 1;
        for (const auto& s : sol.attractors[i].strings())
            out << ' ' << s;
        out << '\n';
    }
    out << "minimum_size " << sol.minimum_size << '\n';
    for (const auto& c : sol.solutions)
        out << "solution " << set_text(c.mask) << '\n';
    for (const auto& w : sol.witnesses)
        out << "witness " << witness_key(w) << ' ' << set_text(w.control.mask) << ' '
            << w.from.to_string() << " -> " << w.to.to_string() << (w.reaches_target ? "" : " unsound") << '\n';
    for (const auto& b : sol.per_block) {
        out << "block " << b.block + 1 << ' ' << set_text(b.nodes) << " hat " << set_text(b.hat) << " solutions";
        for (const auto& c : b.cover.solutions)
            out << ' ' << set_text(c.mask);
        out << '\n';
    }
    return out.str();
}

Comparison compare(const ControlSolution& global, const ControlSolution& decomposed)
{
    return Comparison{global.minimum_size, decomposed.minimum_size, global.solutions == decomposed.solutions};
}

unsigned max_in_degree(const BooleanNetwork& bn)
{
    unsigned k = 0;
    for (unsigned i = 0; i < bn.size(); ++i)
        k = std::max(k, width_of(bn.parents(i)));
    return k;
}

BenchRow bench_network(const BooleanNetwork& bn, unsigned k, std::uint64_t seed, const ControlOptions& options)
{
    using clock = std::chrono::steady_clock;
    BenchRow row;
    row.n = bn.size();
    row.k = k;
    row.seed = seed;

    auto t0 = clock::now();
    const ControlSolution g = full_control(bn, Method::Global, options);
    auto t1 = clock::now();
    const ControlSolution d = full_control(bn, Method::Decomposed, options);
    auto t2 = clock::now();

    row.t_global_ms = std::chrono::duration<double, std::milli>(t1 - t0).count();
    row.t_decomp_ms = std::chrono::duration<double, std::milli>(t2 - t1).count();
    row.lattice_nodes_global = g.lattice_nodes;
    row.lattice_nodes_blocks_sum = d.lattice_nodes;
    return row;
}

std::string to_csv(const BenchRow& row)
{
    char buf[256];
    std::snprintf(buf, sizeof buf, "%u,%u,%llu,%.3f,%.3f,%llu,%llu", row.n, row.k,
                  static_cast<unsigned long long>(row.seed), row.t_global_ms, row.t_decomp_ms,
                  static_cast<unsigned long long>(row.lattice_nodes_global),
                  static_cast<unsigned long long>(row.lattice_nodes_blocks_sum));
    return buf;
}

}  // namespace bnctl
