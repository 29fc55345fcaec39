#include "bnctl/transition.hpp"

#include <algorithm>
#include <deque>
#include <limits>

namespace bnctl {

TransitionSystem::TransitionSystem(UpdateMode mode, StateSet universe)
    : mode_(mode)
    , universe_(std::move(universe))
{
}

TransitionSystem TransitionSystem::build(const BooleanNetwork& bn,
                                         const StateSet& universe,
                                         UpdateMode mode,
                                         std::size_t state_cap)
{
    const VarMask scope = universe.scope();
    if ((scope & ~bn.variables()) != 0)
        throw std::invalid_argument("universe scope refers to variables outside the network");
    if (!bn.is_closed(scope))
        throw std::invalid_argument("universe scope is not closed under the influence graph");
    if (universe.capacity() > state_cap)
        throw CapacityError("state space of 2^" + std::to_string(universe.width()) +
                            " states exceeds the cap of " + std::to_string(state_cap));
    if (universe.empty())
        throw std::invalid_argument("empty universe");

    TransitionSystem ts(mode, universe);
    const std::size_t cap = universe.capacity();
    const auto vars = mask_to_indices(scope);
    const auto m = static_cast<unsigned>(vars.size());

    if (mode == UpdateMode::Asynchronous) {
        ts.succ_.assign(cap, 0);
        ts.pred_.assign(cap, 0);
        universe.for_each([&](StateCode s) {
            const StateCode global = deposit(s, scope);
            std::uint32_t mask = 0;
            for (unsigned k = 0; k < m; ++k) {
                const bool next = bn.update(vars[k] - 1, global);
                const bool cur = (s >> k) & 1u;
                if (next == cur) {
                    mask |= kSelfLoop;
                } else if (universe.contains(s ^ (StateCode{1} << k))) {
                    mask |= std::uint32_t{1} << k;
                }
            }
            ts.succ_[s] = mask;
        });
        universe.for_each([&](StateCode s) {
            std::uint32_t mask = ts.succ_[s];
            if (mask & kSelfLoop)
                ts.pred_[s] |= kSelfLoop;
            mask &= ~kSelfLoop;
            while (mask != 0) {
                const std::uint32_t bit = mask & -mask;
                ts.pred_[s ^ bit] |= bit;
                mask &= mask - 1;
            }
        });
    } else {
        ts.succ_.assign(cap, kNone);
        ts.pred_offsets_.assign(cap + 1, 0);
        universe.for_each([&](StateCode s) {
            const StateCode global = deposit(s, scope);
            StateCode next = 0;
            for (unsigned k = 0; k < m; ++k)
                if (bn.update(vars[k] - 1, global))
                    next |= StateCode{1} << k;
            if (universe.contains(next)) {
                ts.succ_[s] = next;
                ++ts.pred_offsets_[next + 1];
            }
        });
        for (std::size_t i = 0; i < cap; ++i)
            ts.pred_offsets_[i + 1] += ts.pred_offsets_[i];
        ts.pred_.assign(ts.pred_offsets_[cap], 0);
        std::vector<std::uint32_t> fill(ts.pred_offsets_.begin(), ts.pred_offsets_.end() - 1);
        universe.for_each([&](StateCode s) {
            if (ts.succ_[s] != kNone)
                ts.pred_[fill[ts.succ_[s]]++] = s;
        });
    }
    return ts;
}

std::vector<StateCode> TransitionSystem::successors(StateCode s) const
{
    std::vector<StateCode> out;
    for_each_successor(s, [&](StateCode t) { out.push_back(t); });
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<StateCode> TransitionSystem::predecessors(StateCode s) const
{
    std::vector<StateCode> out;
    for_each_predecessor(s, [&](StateCode t) { out.push_back(t); });
    std::sort(out.begin(), out.end());
    return out;
}

bool TransitionSystem::has_edge(StateCode from, StateCode to) const
{
    bool found = false;
    for_each_successor(from, [&](StateCode t) { found = found || t == to; });
    return found;
}

StateSet full_universe(const BooleanNetwork& bn) { return StateSet::full(bn.variables()); }

TransitionSystem build_async_ts(const BooleanNetwork& bn, const StateSet& universe, std::size_t state_cap)
{
    return TransitionSystem::build(bn, universe, UpdateMode::Asynchronous, state_cap);
}

TransitionSystem build_sync_ts(const BooleanNetwork& bn, const StateSet& universe, std::size_t state_cap)
{
    return TransitionSystem::build(bn, universe, UpdateMode::Synchronous, state_cap);
}

StateSet pre_image(const TransitionSystem& ts, const StateSet& targets)
{
    StateSet out(ts.scope());
    targets.for_each([&](StateCode s) {
        if (ts.universe().contains(s))
            ts.for_each_predecessor(s, [&](StateCode p) { out.insert(p); });
    });
    return out;
}

StateSet reach(const TransitionSystem& ts, StateCode s)
{
    StateSet seen(ts.scope());
    if (!ts.universe().contains(s))
        throw std::invalid_argument("state outside the transition system's universe");
    std::vector<StateCode> stack{s};
    seen.insert(s);
    while (!stack.empty()) {
        const StateCode v = stack.back();
        stack.pop_back();
        ts.for_each_successor(v, [&](StateCode t) {
            if (!seen.contains(t)) {
                seen.insert(t);
                stack.push_back(t);
            }
        });
    }
    return seen;
}

std::vector<Attractor> attractors(const TransitionSystem& ts)
{
    // Iterative Tarjan over the successor graph; self-loops are skipped.
    constexpr std::uint32_t kUnvisited = std::numeric_limits<std::uint32_t>::max();
    const std::size_t cap = ts.universe().capacity();
    const bool async = ts.mode() == UpdateMode::Asynchronous;

    std::vector<std::uint32_t> index(cap, kUnvisited);
    std::vector<std::uint32_t> low(cap, 0);
    std::vector<bool> on_stack(cap, false);
    std::vector<StateCode> scc_stack;
    struct Frame {
        StateCode v;
        std::uint32_t cursor;
    };
    std::vector<Frame> frames;
    std::uint32_t counter = 0;
    std::vector<Attractor> out;

    auto initial_cursor = [&](StateCode v) -> std::uint32_t {
        if (async)
            return ts.succ_[v] & ~TransitionSystem::kSelfLoop;
        return ts.succ_[v] != TransitionSystem::kNone && ts.succ_[v] != v ? 1u : 0u;
    };
    auto push = [&](StateCode v) {
        index[v] = low[v] = counter++;
        scc_stack.push_back(v);
        on_stack[v] = true;
        frames.push_back(Frame{v, initial_cursor(v)});
    };

    ts.universe().for_each([&](StateCode root) {
        if (index[root] != kUnvisited)
            return;
        push(root);
        while (!frames.empty()) {
            Frame& f = frames.back();
            if (f.cursor != 0) {
                StateCode w;
                if (async) {
                    const std::uint32_t bit = f.cursor & -f.cursor;
                    f.cursor &= f.cursor - 1;
                    w = f.v ^ bit;
                } else {
                    f.cursor = 0;
                    w = ts.succ_[f.v];
                }
                if (index[w] == kUnvisited) {
                    push(w);
                } else if (on_stack[w]) {
                    low[f.v] = std::min(low[f.v], index[w]);
                }
                continue;
            }
            const StateCode v = f.v;
            frames.pop_back();
            if (!frames.empty())
                low[frames.back().v] = std::min(low[frames.back().v], low[v]);
            if (low[v] != index[v])
                continue;

            StateSet component(ts.scope());
            StateCode w;
            do {
                w = scc_stack.back();
                scc_stack.pop_back();
                on_stack[w] = false;
                component.insert(w);
            } while (w != v);

            bool terminal = true;
            component.for_each([&](StateCode s) {
                if (terminal)
                    ts.for_each_successor(s, [&](StateCode t) { terminal = terminal && component.contains(t); });
            });
            if (terminal)
                out.push_back(Attractor{0, std::move(component)});
        }
    });

    std::sort(out.begin(), out.end(), [](const Attractor& a, const Attractor& b) {
        return a.states.codes().front() < b.states.codes().front();
    });
    for (std::size_t i = 0; i < out.size(); ++i)
        out[i].id = i;
    return out;
}

StateSet compute_basin(const TransitionSystem& ts, const StateSet& seed)
{
    StateSet basin(ts.scope());
    std::vector<StateCode> frontier;
    seed.for_each([&](StateCode s) {
        basin.insert(s);
        frontier.push_back(s);
    });
    while (!frontier.empty()) {
        const StateCode s = frontier.back();
        frontier.pop_back();
        ts.for_each_predecessor(s, [&](StateCode p) {
            if (!basin.contains(p)) {
                basin.insert(p);
                frontier.push_back(p);
            }
        });
    }
    return basin;
}

}  // namespace bnctl
