#pragma once

#include "bnctl/network.hpp"
#include "bnctl/state.hpp"
#include "bnctl/transition.hpp"

#include <cstddef>
#include <map>
#include <memory>
#include <utility>
#include <vector>

namespace bnctl {

enum class BlockKind { Elementary, NonElementary };

/// A basic block: one maximal SCC of the influence graph plus its parent nodes.
struct Block {
    VarMask nodes = 0;
    VarMask core = 0;           // the SCC itself
    VarMask control_nodes = 0;  // nodes shared with parent blocks
    BlockKind kind = BlockKind::Elementary;
    std::vector<std::size_t> parents;
    std::vector<std::size_t> children;
    VarMask ancestor_closure = 0;        // ac(B)
    VarMask ancestor_closure_minus = 0;  // ac(B) minus the part of B not covered earlier
    VarMask hat = 0;                     // B minus the union of all earlier blocks
};

/// Basic blocks in topological order of the block graph.
class BlockGraph {
public:
    explicit BlockGraph(std::vector<Block> blocks)
        : blocks_(std::move(blocks))
    {
    }

    std::size_t size() const { return blocks_.size(); }
    const Block& operator[](std::size_t j) const { return blocks_.at(j); }
    const std::vector<Block>& blocks() const { return blocks_; }

    /// Union of blocks 0..j.
    VarMask prefix_union(std::size_t j) const;

    bool is_acyclic() const;

private:
    std::vector<Block> blocks_;
};

/// Maximal SCCs of the influence graph, in no particular order.
std::vector<VarMask> influence_sccs(const BooleanNetwork& bn);

/// True when `vars` has no influence from outside itself.
bool is_elementary(const BooleanNetwork& bn, VarMask vars);

/// Builds the block graph. A block B' is a parent of B when the SCC of B'
/// contains a parent node of the SCC of B. Ties in the topological order are
/// broken by the smallest variable index of the block, then of its SCC.
BlockGraph decompose(const BooleanNetwork& bn);

/// Transition system of block j over the states of ac(B_j) whose ac(B_j)^-
/// projection lies in `parent_basin`. For an elementary block `parent_basin`
/// has the empty scope and the universe is all of S_{B_j}.
TransitionSystem realized_ts(const BooleanNetwork& bn,
                             const BlockGraph& bg,
                             std::size_t j,
                             const StateSet& parent_basin,
                             UpdateMode mode = UpdateMode::Asynchronous,
                             std::size_t state_cap = kDefaultStateCap);

/// Guarded backward fixpoint from `attractor` in a realized transition
/// system: predecessors whose projection onto the parent basin's scope falls
/// outside `parent_basin` are discarded.
StateSet compute_basin_block(const TransitionSystem& realized,
                             const StateSet& attractor,
                             const StateSet& parent_basin);

/// Per-block projections of one global attractor and their basins, each
/// over the ancestor closure of the block.
struct BlockTrace {
    std::vector<StateSet> attractor;
    std::vector<StateSet> basin;
    std::vector<StateSet> parent_basin;
};

/// Runs the per-block basin pipeline, caching realized transition systems by
/// (block, parent basin).
class BlockPipeline {
public:
    BlockPipeline(const BooleanNetwork& bn,
                  BlockGraph bg,
                  UpdateMode mode = UpdateMode::Asynchronous,
                  std::size_t state_cap = kDefaultStateCap);

    const BooleanNetwork& network() const { return *bn_; }
    const BlockGraph& graph() const { return bg_; }

    const TransitionSystem& realized(std::size_t j, const StateSet& parent_basin);

    /// Basin pipeline for a global attractor, blocks visited in topological order.
    BlockTrace trace(const StateSet& global_attractor);

    /// Cross of the parents' basins from `basins`, over ac(B_j)^-.
    StateSet parent_basin(std::size_t j, const std::vector<StateSet>& basins) const;

    std::size_t realized_count() const { return cache_.size(); }

private:
    using Key = std::pair<std::size_t, std::vector<std::uint64_t>>;

    const BooleanNetwork* bn_;
    BlockGraph bg_;
    UpdateMode mode_;
    std::size_t state_cap_;
    std::map<Key, std::unique_ptr<TransitionSystem>> cache_;
};

struct ComposedAttractor {
    StateSet attractor;
    StateSet basin;
};

/// Global attractors and basins assembled purely from block-level
/// computations, ordered like attractors().
std::vector<ComposedAttractor> decomposed_attractors(BlockPipeline& pipeline);

/// Cross of the blockwise basins of a global attractor.
StateSet blockwise_basin(BlockPipeline& pipeline, const StateSet& global_attractor);

}  // namespace bnctl
