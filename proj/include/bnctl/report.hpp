#pragma once

#include "bnctl/control.hpp"

#include <json.hpp>

#include <cstdint>
#include <ostream>
#include <string>
#include <vector>

namespace bnctl {

/// Result document: method, attractors, minimum_size, solutions, witnesses, per_block.
nlohmann::json to_json(const ControlSolution& sol);

/// Same solution as `to_json` in the line-oriented text form.
std::string to_text(const ControlSolution& sol);

/// Fixed key for witness pairs: "i->j" with 1-based attractor ordinals.
std::string pair_key(std::size_t from, std::size_t to);

/// `pair_key` of the witness, or "s->1" for the single witness of a target query.
std::string witness_key(const Witness& w);

struct Comparison {
    std::size_t global_size = 0;
    std::size_t decomposed_size = 0;
    bool same_solutions = false;
};

Comparison compare(const ControlSolution& global, const ControlSolution& decomposed);

struct BenchRow {
    unsigned n = 0;
    unsigned k = 0;
    std::uint64_t seed = 0;
    double t_global_ms = 0;
    double t_decomp_ms = 0;
    std::uint64_t lattice_nodes_global = 0;
    std::uint64_t lattice_nodes_blocks_sum = 0;
};

inline constexpr const char* kBenchHeader =
    "n,k,seed,t_global_ms,t_decomp_ms,lattice_nodes_global,lattice_nodes_blocks_sum";

/// Times full control under both methods.
BenchRow bench_network(const BooleanNetwork& bn, unsigned k, std::uint64_t seed, const ControlOptions& options = {});

std::string to_csv(const BenchRow& row);

/// Largest semantic in-degree of the network.
unsigned max_in_degree(const BooleanNetwork& bn);

}  // namespace bnctl
