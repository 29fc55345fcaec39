#include "bnctl/decomp.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <tuple>

namespace bnctl {

namespace {

struct SccState {
    const BooleanNetwork& bn;
    std::vector<int> index;
    std::vector<int> low;
    std::vector<bool> on_stack;
    std::vector<unsigned> stack;
    std::vector<VarMask> out;
    int counter = 0;

    void visit(unsigned v)
    {
        index[v] = low[v] = counter++;
        stack.push_back(v);
        on_stack[v] = true;
        // successors of v: variables whose function depends on v
        for (unsigned w = 0; w < bn.size(); ++w) {
            if ((bn.parents(w) >> v & 1u) == 0)
                continue;
            if (index[w] < 0) {
                visit(w);
                low[v] = std::min(low[v], low[w]);
            } else if (on_stack[w]) {
                low[v] = std::min(low[v], index[w]);
            }
        }
        if (low[v] == index[v]) {
            VarMask comp = 0;
            unsigned w;
            do {
                w = stack.back();
                stack.pop_back();
                on_stack[w] = false;
                comp |= VarMask{1} << w;
            } while (w != v);
            out.push_back(comp);
        }
    }
};

unsigned lowest(VarMask m) { return static_cast<unsigned>(std::countr_zero(m)); }

}  // namespace

VarMask BlockGraph::prefix_union(std::size_t j) const
{
    VarMask m = 0;
    for (std::size_t r = 0; r <= j; ++r)
        m |= blocks_.at(r).nodes;
    return m;
}

bool BlockGraph::is_acyclic() const
{
    // Kahn's algorithm over the recorded parent edges.
    std::vector<std::size_t> indegree(blocks_.size());
    for (std::size_t j = 0; j < blocks_.size(); ++j)
        indegree[j] = blocks_[j].parents.size();
    std::vector<std::size_t> ready;
    for (std::size_t j = 0; j < blocks_.size(); ++j)
        if (indegree[j] == 0)
            ready.push_back(j);
    std::size_t seen = 0;
    while (!ready.empty()) {
        const std::size_t j = ready.back();
        ready.pop_back();
        ++seen;
        for (std::size_t c : blocks_[j].children)
            if (--indegree[c] == 0)
                ready.push_back(c);
    }
    return seen == blocks_.size();
}

std::vector<VarMask> influence_sccs(const BooleanNetwork& bn)
{
    const unsigned n = bn.size();
    SccState st{bn, std::vector<int>(n, -1), std::vector<int>(n, 0), std::vector<bool>(n, false), {}, {}};
    for (unsigned v = 0; v < n; ++v)
        if (st.index[v] < 0)
            st.visit(v);
    return st.out;
}

bool is_elementary(const BooleanNetwork& bn, VarMask vars) { return bn.is_closed(vars); }

BlockGraph decompose(const BooleanNetwork& bn)
{
    struct Raw {
        VarMask core;
        VarMask nodes;
    };
    std::vector<Raw> raw;
    for (VarMask scc : influence_sccs(bn))
        raw.push_back(Raw{scc, scc | bn.parents_of(scc)});

    const std::size_t k = raw.size();
    auto is_edge = [&](std::size_t from, std::size_t to) {
        return from != to && (raw[from].core & raw[to].nodes & ~raw[to].core) != 0;
    };

    // Kahn's algorithm with a deterministic tie-break.
    std::vector<std::size_t> indegree(k, 0);
    for (std::size_t a = 0; a < k; ++a)
        for (std::size_t b = 0; b < k; ++b)
            if (is_edge(a, b))
                ++indegree[b];
    auto key = [&](std::size_t i) { return std::make_tuple(lowest(raw[i].nodes), lowest(raw[i].core)); };
    std::vector<std::size_t> order;
    std::vector<bool> done(k, false);
    while (order.size() < k) {
        std::size_t best = k;
        for (std::size_t i = 0; i < k; ++i)
            if (!done[i] && indegree[i] == 0 && (best == k || key(i) < key(best)))
                best = i;
        if (best == k)
            throw std::logic_error("block graph has a cycle");
        done[best] = true;
        order.push_back(best);
        for (std::size_t b = 0; b < k; ++b)
            if (is_edge(best, b))
                --indegree[b];
    }

    std::vector<std::size_t> position(k);
    for (std::size_t p = 0; p < k; ++p)
        position[order[p]] = p;

    std::vector<Block> blocks(k);
    VarMask covered = 0;
    for (std::size_t p = 0; p < k; ++p) {
        const Raw& r = raw[order[p]];
        Block& b = blocks[p];
        b.nodes = r.nodes;
        b.core = r.core;
        b.control_nodes = r.nodes & ~r.core;
        for (std::size_t other = 0; other < k; ++other) {
            if (is_edge(other, order[p]))
                b.parents.push_back(position[other]);
            if (is_edge(order[p], other))
                b.children.push_back(position[other]);
        }
        std::sort(b.parents.begin(), b.parents.end());
        std::sort(b.children.begin(), b.children.end());
        b.kind = b.parents.empty() ? BlockKind::Elementary : BlockKind::NonElementary;

        b.ancestor_closure = b.nodes;
        for (std::size_t q : b.parents)
            b.ancestor_closure |= blocks[q].ancestor_closure;
        const VarMask minus_part = b.nodes & ~covered;  // B_j minus the earlier prefix union
        b.ancestor_closure_minus = b.ancestor_closure & ~minus_part;
        b.hat = b.nodes & ~covered;
        covered |= b.nodes;
    }
    return BlockGraph(std::move(blocks));
}

TransitionSystem realized_ts(const BooleanNetwork& bn,
                             const BlockGraph& bg,
                             std::size_t j,
                             const StateSet& parent_basin,
                             UpdateMode mode,
                             std::size_t state_cap)
{
    const Block& b = bg[j];
    if (parent_basin.scope() != b.ancestor_closure_minus)
        throw std::invalid_argument("parent basin is not over ac(B)^- of the block");
    const VarMask ac = b.ancestor_closure;
    if (StateSet(ac).capacity() > state_cap)
        throw CapacityError("block state space exceeds the cap");
    StateSet universe(ac);
    const VarMask free = ac & ~b.ancestor_closure_minus;
    const StateCode free_count = StateCode{1} << width_of(free);
    parent_basin.for_each([&](StateCode p) {
        const StateCode base = deposit(p, b.ancestor_closure_minus);
        for (StateCode t = 0; t < free_count; ++t)
            universe.insert(extract(base | deposit(t, free), ac));
    });
    if (universe.empty())
        throw std::invalid_argument("empty realized universe: inconsistent parent basin");
    return TransitionSystem::build(bn, universe, mode, state_cap);
}

StateSet compute_basin_block(const TransitionSystem& realized,
                             const StateSet& attractor,
                             const StateSet& parent_basin)
{
    const VarMask scope = realized.scope();
    const VarMask guard_scope = parent_basin.scope();
    if ((guard_scope & ~scope) != 0)
        throw std::invalid_argument("parent basin scope outside the block");
    StateSet basin(scope);
    std::vector<StateCode> frontier;
    attractor.for_each([&](StateCode s) {
        basin.insert(s);
        frontier.push_back(s);
    });
    while (!frontier.empty()) {
        const StateCode s = frontier.back();
        frontier.pop_back();
        realized.for_each_predecessor(s, [&](StateCode p) {
            if (basin.contains(p))
                return;
            if (!parent_basin.contains(project_code(p, scope, guard_scope)))
                return;
            basin.insert(p);
            frontier.push_back(p);
        });
    }
    return basin;
}

BlockPipeline::BlockPipeline(const BooleanNetwork& bn, BlockGraph bg, UpdateMode mode, std::size_t state_cap)
    : bn_(&bn)
    , bg_(std::move(bg))
    , mode_(mode)
    , state_cap_(state_cap)
{
}

const TransitionSystem& BlockPipeline::realized(std::size_t j, const StateSet& parent_basin)
{
    Key key{j, parent_basin.words()};
    auto it = cache_.find(key);
    if (it == cache_.end()) {
        auto ts = std::make_unique<TransitionSystem>(realized_ts(*bn_, bg_, j, parent_basin, mode_, state_cap_));
        it = cache_.emplace(std::move(key), std::move(ts)).first;
    }
    return *it->second;
}

StateSet BlockPipeline::parent_basin(std::size_t j, const std::vector<StateSet>& basins) const
{
    const Block& b = bg_[j];
    if (b.parents.empty())
        return StateSet::full(0);
    std::vector<StateSet> parts;
    for (std::size_t q : b.parents)
        parts.push_back(basins.at(q));
    StateSet joined = cross(parts);
    // The parents' closures cover ac(B)^- exactly.
    if (joined.scope() != b.ancestor_closure_minus)
        throw std::logic_error("parent closures do not cover ac(B)^-");
    return joined;
}

BlockTrace BlockPipeline::trace(const StateSet& global_attractor)
{
    if (global_attractor.scope() != bn_->variables())
        throw std::invalid_argument("global attractor must be over all variables");
    BlockTrace t;
    for (std::size_t j = 0; j < bg_.size(); ++j) {
        const Block& b = bg_[j];
        StateSet proj = project(global_attractor, b.ancestor_closure);
        StateSet parent = parent_basin(j, t.basin);
        const TransitionSystem& ts = realized(j, parent);
        t.basin.push_back(compute_basin_block(ts, proj, parent));
        t.attractor.push_back(std::move(proj));
        t.parent_basin.push_back(std::move(parent));
    }
    return t;
}

std::vector<ComposedAttractor> decomposed_attractors(BlockPipeline& pipeline)
{
    const BlockGraph& bg = pipeline.graph();
    std::vector<std::vector<ComposedAttractor>> stages(bg.size());

    // Calls fn with the cross of one entry per listed block, skipping empty crosses.
    auto for_each_combination = [&](const std::vector<std::size_t>& blocks,
                                    const std::function<void(const ComposedAttractor&)>& fn) {
        if (blocks.empty()) {
            fn(ComposedAttractor{StateSet::full(0), StateSet::full(0)});
            return;
        }
        std::function<void(std::size_t, const ComposedAttractor*)> rec =
            [&](std::size_t depth, const ComposedAttractor* acc) {
                if (depth == blocks.size()) {
                    fn(*acc);
                    return;
                }
                for (const auto& entry : stages[blocks[depth]]) {
                    if (acc == nullptr) {
                        rec(depth + 1, &entry);
                        continue;
                    }
                    ComposedAttractor next{cross(acc->attractor, entry.attractor), StateSet()};
                    if (next.attractor.empty())
                        continue;
                    next.basin = cross(acc->basin, entry.basin);
                    rec(depth + 1, &next);
                }
            };
        rec(0, nullptr);
    };

    for (std::size_t j = 0; j < bg.size(); ++j) {
        const Block& b = bg[j];
        for_each_combination(b.parents, [&](const ComposedAttractor& upstream) {
            const TransitionSystem& ts = pipeline.realized(j, upstream.basin);
            for (auto& a : attractors(ts)) {
                if (!project(a.states, b.ancestor_closure_minus).is_subset_of(upstream.attractor))
                    continue;
                StateSet basin = compute_basin_block(ts, a.states, upstream.basin);
                stages[j].push_back(ComposedAttractor{std::move(a.states), std::move(basin)});
            }
        });
    }

    std::vector<std::size_t> sinks;
    for (std::size_t j = 0; j < bg.size(); ++j)
        if (bg[j].children.empty())
            sinks.push_back(j);

    std::vector<ComposedAttractor> out;
    for_each_combination(sinks, [&](const ComposedAttractor& c) { out.push_back(c); });
    std::sort(out.begin(), out.end(), [](const ComposedAttractor& a, const ComposedAttractor& b) {
        return a.attractor.codes().front() < b.attractor.codes().front();
    });
    return out;
}

StateSet blockwise_basin(BlockPipeline& pipeline, const StateSet& global_attractor)
{
    BlockTrace t = pipeline.trace(global_attractor);
    return cross(std::span<const StateSet>(t.basin));
}

}  // namespace bnctl
