#pragma once

// Brute-force oracles for cross-checking the production paths. Nothing here
// reuses the transition-system or control code: successors are recomputed
// from the expression trees on every step.

#include "bnctl/network.hpp"
#include "bnctl/state.hpp"

#include <cstdint>
#include <vector>

namespace bnctl::verify {

inline constexpr unsigned kOracleMaxVariables = 12;
inline constexpr unsigned kOracleControlMaxVariables = 10;
inline constexpr std::size_t kOracleMaxAttractors = 6;

/// Asynchronous successors of a global state, self-loop included when some variable is stable.
std::vector<StateCode> oracle_successors(const BooleanNetwork& bn, StateCode s);

/// Plain BFS: can `s` reach some member of `targets`?
bool oracle_reaches(const BooleanNetwork& bn, StateCode s, const StateSet& targets);

/// {s : oracle_reaches(s, targets)}.
StateSet oracle_basin(const BooleanNetwork& bn, const StateSet& targets);

/// Attractors by definition: sets A with reach(s) = A for all s in A.
std::vector<StateSet> oracle_attractors(const BooleanNetwork& bn);

/// Does `control` solve the all-pairs problem for `attractors`? For every
/// ordered pair some source state and some subset of `control` must land in
/// a state that reaches the target attractor.
bool oracle_control_valid(const BooleanNetwork& bn, const std::vector<StateSet>& attractors, VarMask control);

struct OracleControl {
    std::size_t minimum_size = 0;
    std::vector<VarMask> solutions;  // ascending masks
};

/// Exhaustive search over all 2^n candidate sets in increasing cardinality.
OracleControl oracle_minimal_control(const BooleanNetwork& bn, const std::vector<StateSet>& attractors);

struct RandomBNSpec {
    unsigned n = 4;
    unsigned k = 2;
    std::uint64_t seed = 1;
    double bias = 0.5;
};

/// Deterministic random network: each variable gets between 1 and k
/// distinct regulators and a random truth table over them.
BooleanNetwork generate_random_bn(const RandomBNSpec& spec);

/// The generated network in the text format.
std::string generate_random_text(const RandomBNSpec& spec);

}  // namespace bnctl::verify
