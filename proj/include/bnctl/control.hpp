#pragma once

#include "bnctl/decomp.hpp"
#include "bnctl/network.hpp"
#include "bnctl/state.hpp"
#include "bnctl/transition.hpp"

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace bnctl {

/// A set of variables to toggle in one step.
struct ControlSet {
    VarMask mask = 0;

    std::size_t size() const { return width_of(mask); }
    bool empty() const { return mask == 0; }
    std::vector<unsigned> indices() const { return mask_to_indices(mask); }
    bool contains(VarMask other) const { return (other & ~mask) == 0; }

    bool operator==(const ControlSet&) const = default;
};

/// Lexicographic order of the 1-based index lists.
bool lex_less(VarMask a, VarMask b);

inline bool operator<(const ControlSet& a, const ControlSet& b) { return lex_less(a.mask, b.mask); }

struct Hamming {
    unsigned distance = 0;
    VarMask diff = 0;  // global variable indices
};

Hamming hamming(const State& a, const State& b);

struct HammingToSet {
    unsigned distance = 0;
    std::vector<VarMask> arg_sets;  // lexicographic order
};

/// Minimum distance from `s` to `targets` and every index set realizing it.
/// Throws std::invalid_argument on an empty target set.
HammingToSet hamming_to_set(const State& s, const StateSet& targets);

/// Toggles the variables of `control` that lie in the state's scope.
State apply_control(ControlSet control, const State& s);

/// Attractor state and basin state realizing one matrix member.
struct MatrixWitness {
    StateCode from = 0;
    StateCode to = 0;
};

/// p x p families of index sets. Member sets are global variable masks
/// inside `index_scope`; witness states live over `state_scope`.
struct ControlMatrix {
    struct Member {
        VarMask set = 0;
        MatrixWitness witness;
    };

    std::size_t p = 0;
    VarMask index_scope = 0;
    VarMask state_scope = 0;
    std::vector<std::vector<std::vector<Member>>> entries;

    /// Member sets of entry (i, j), lexicographic.
    std::vector<VarMask> sets(std::size_t i, std::size_t j) const;
};

/// Entry (i, j) collects the differences, restricted to `index_scope`,
/// between states of sources[i] and states of basins[j].
ControlMatrix build_matrix(const std::vector<StateSet>& sources,
                           const std::vector<StateSet>& basins,
                           VarMask index_scope);

/// Global matrix over all variables. Needs at least two attractors.
ControlMatrix build_control_matrix(const std::vector<StateSet>& attractors, const std::vector<StateSet>& basins);

/// Ordered pairs (i, j), i != j, having a member of M_ij inside L.
std::vector<std::pair<std::size_t, std::size_t>> label_closure(const ControlMatrix& m, VarMask L);

class UncontrollablePair : public std::runtime_error {
public:
    UncontrollablePair(std::size_t from, std::size_t to);
    std::size_t from() const { return from_; }
    std::size_t to() const { return to_; }

private:
    std::size_t from_;
    std::size_t to_;
};

struct CoverOptions {
    /// Report every inclusion-minimal cover instead of the minimum-cardinality ones.
    bool subset_minimal = false;
    /// Drop non-inclusion-minimal members before searching.
    bool reduce = true;
};

struct CoverResult {
    std::size_t minimum_size = 0;
    std::vector<ControlSet> solutions;
    std::uint64_t nodes = 0;
};

/// Exact search for every L covering all off-diagonal pairs.
CoverResult minimal_cover(const ControlMatrix& m, const CoverOptions& options = {});

enum class Method { Global, Decomposed };

std::string to_string(Method m);

struct Witness {
    std::size_t from_attractor = 0;
    std::size_t to_attractor = 0;
    ControlSet control;
    State from;
    State to;
    /// False when no subset of the solution takes any state of the source
    /// attractor into the target basin (possible for decomposed answers).
    bool reaches_target = true;
};

struct BlockSolution {
    std::size_t block = 0;
    VarMask nodes = 0;
    VarMask hat = 0;
    ControlMatrix matrix;
    CoverResult cover;
    std::vector<Witness> witnesses;  // states over ac(B)
};

struct ControlSolution {
    Method method = Method::Global;
    VarMask scope = 0;
    std::vector<StateSet> attractors;
    std::size_t minimum_size = 0;
    std::vector<ControlSet> solutions;
    /// One witness per ordered pair for solutions.front().
    std::vector<Witness> witnesses;
    std::vector<BlockSolution> per_block;
    std::uint64_t lattice_nodes = 0;
    std::uint64_t search_nodes = 0;
};

struct ControlOptions {
    UpdateMode mode = UpdateMode::Asynchronous;
    std::size_t state_cap = kDefaultStateCap;
    bool subset_minimal = false;
};

/// Every minimum set of toggles taking `s` into the basin of `target`.
ControlSolution target_control(const BooleanNetwork& bn,
                               const State& s,
                               const StateSet& target,
                               const ControlOptions& options = {});

/// Minimal existential all-pairs control for the given global attractors.
ControlSolution all_pairs_control(const BooleanNetwork& bn,
                                  const std::vector<StateSet>& attractors,
                                  Method method,
                                  const ControlOptions& options = {});

/// All-pairs control over every attractor of the network.
ControlSolution full_control(const BooleanNetwork& bn, Method method, const ControlOptions& options = {});

/// Attractor state sets of the full transition system, canonical order.
std::vector<StateSet> network_attractors(const BooleanNetwork& bn, const ControlOptions& options = {});

struct LatticeSizes {
    std::uint64_t global = 0;
    std::uint64_t blocks_sum = 0;
};

/// Size of the subset lattice searched by each method.
LatticeSizes lattice_sizes(const BooleanNetwork& bn, const BlockGraph& bg);

}  // namespace bnctl
