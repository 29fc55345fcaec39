#pragma once

#include "bnctl/network.hpp"
#include "bnctl/state.hpp"

#include <cstddef>
#include <vector>

namespace bnctl {

enum class UpdateMode { Asynchronous, Synchronous };

/// A terminal SCC of a transition system. `id` is the position in the
/// canonical order (ascending minimal state code, variable 1 as bit 0).
struct Attractor {
    std::size_t id = 0;
    StateSet states;
};

/// Successor and predecessor relations materialized over a universe of
/// states of one scope. The scope must be closed under the network's
/// influence edges; edges leaving the universe are dropped.
class TransitionSystem {
public:
    static TransitionSystem build(const BooleanNetwork& bn,
                                  const StateSet& universe,
                                  UpdateMode mode,
                                  std::size_t state_cap = kDefaultStateCap);

    UpdateMode mode() const { return mode_; }
    VarMask scope() const { return universe_.scope(); }
    const StateSet& universe() const { return universe_; }

    template <class Fn>
    void for_each_successor(StateCode s, Fn&& fn) const
    {
        if (mode_ == UpdateMode::Asynchronous) {
            std::uint32_t m = succ_[s];
            if (m & kSelfLoop)
                fn(s);
            m &= ~kSelfLoop;
            while (m != 0) {
                fn(static_cast<StateCode>(s ^ (m & -m)));
                m &= m - 1;
            }
        } else if (succ_[s] != kNone) {
            fn(succ_[s]);
        }
    }

    template <class Fn>
    void for_each_predecessor(StateCode s, Fn&& fn) const
    {
        if (mode_ == UpdateMode::Asynchronous) {
            std::uint32_t m = pred_[s];
            if (m & kSelfLoop)
                fn(s);
            m &= ~kSelfLoop;
            while (m != 0) {
                fn(static_cast<StateCode>(s ^ (m & -m)));
                m &= m - 1;
            }
        } else {
            for (std::uint32_t k = pred_offsets_[s]; k < pred_offsets_[s + 1]; ++k)
                fn(pred_[k]);
        }
    }

    std::vector<StateCode> successors(StateCode s) const;
    std::vector<StateCode> predecessors(StateCode s) const;
    bool has_edge(StateCode from, StateCode to) const;

private:
    friend std::vector<Attractor> attractors(const TransitionSystem& ts);

    static constexpr std::uint32_t kSelfLoop = 0x8000'0000u;
    static constexpr std::uint32_t kNone = 0xFFFF'FFFFu;

    TransitionSystem(UpdateMode mode, StateSet universe);

    UpdateMode mode_;
    StateSet universe_;
    // Asynchronous: per-state masks of flippable scope positions, plus kSelfLoop.
    // Synchronous: succ_ holds the unique successor (or kNone), pred_ is CSR data.
    std::vector<std::uint32_t> succ_;
    std::vector<std::uint32_t> pred_;
    std::vector<std::uint32_t> pred_offsets_;
};

/// All 2^n states of the network.
StateSet full_universe(const BooleanNetwork& bn);

TransitionSystem build_async_ts(const BooleanNetwork& bn, const StateSet& universe,
                                std::size_t state_cap = kDefaultStateCap);
TransitionSystem build_sync_ts(const BooleanNetwork& bn, const StateSet& universe,
                               std::size_t state_cap = kDefaultStateCap);

StateSet pre_image(const TransitionSystem& ts, const StateSet& targets);

/// Forward closure of `s`, including `s`.
StateSet reach(const TransitionSystem& ts, StateCode s);

/// Terminal SCCs of the successor graph, canonically ordered.
std::vector<Attractor> attractors(const TransitionSystem& ts);

/// Least fixpoint of pre containing `seed`: every state with a path into `seed`.
StateSet compute_basin(const TransitionSystem& ts, const StateSet& seed);

inline StateSet compute_basin(const TransitionSystem& ts, const Attractor& a)
{
    return compute_basin(ts, a.states);
}

}  // namespace bnctl
