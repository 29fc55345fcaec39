#include "bnctl/control.hpp"

#include <algorithm>
#include <functional>
#include <optional>
#include <set>
#include <tuple>
#include <unordered_map>
#include <unordered_set>

namespace bnctl {

bool lex_less(VarMask a, VarMask b)
{
    const auto ia = mask_to_indices(a);
    const auto ib = mask_to_indices(b);
    return std::lexicographical_compare(ia.begin(), ia.end(), ib.begin(), ib.end());
}

namespace {

void sort_lex(std::vector<VarMask>& sets) { std::sort(sets.begin(), sets.end(), lex_less); }

bool size_then_lex(VarMask a, VarMask b)
{
    if (width_of(a) != width_of(b))
        return width_of(a) < width_of(b);
    return lex_less(a, b);
}

std::vector<ControlSet> to_controls(const std::set<VarMask>& masks)
{
    std::vector<VarMask> v(masks.begin(), masks.end());
    std::sort(v.begin(), v.end(), size_then_lex);
    std::vector<ControlSet> out;
    for (VarMask m : v)
        out.push_back(ControlSet{m});
    return out;
}

TransitionSystem full_ts(const BooleanNetwork& bn, const ControlOptions& options)
{
    return TransitionSystem::build(bn, full_universe(bn), options.mode, options.state_cap);
}

// Orders candidate witnesses by destination string, then source string.
bool better_witness(const MatrixWitness& a, const MatrixWitness& b, unsigned width)
{
    return std::make_pair(lex_key(a.to, width), lex_key(a.from, width)) <
           std::make_pair(lex_key(b.to, width), lex_key(b.from, width));
}

// Smallest member of entry (i, j) inside `control`, by size then lexicographically.
const ControlMatrix::Member* pick_member(const ControlMatrix& m, std::size_t i, std::size_t j, VarMask control)
{
    const ControlMatrix::Member* best = nullptr;
    for (const auto& member : m.entries[i][j]) {
        if ((member.set & ~control) != 0)
            continue;
        if (best == nullptr || size_then_lex(member.set, best->set))
            best = &member;
    }
    return best;
}

std::vector<Witness> matrix_witnesses(const ControlMatrix& m, VarMask control)
{
    std::vector<Witness> out;
    for (std::size_t i = 0; i < m.p; ++i) {
        for (std::size_t j = 0; j < m.p; ++j) {
            if (i == j)
                continue;
            const auto* member = pick_member(m, i, j, control);
            if (member == nullptr)
                continue;
            out.push_back(Witness{i, j, ControlSet{member->set}, State(m.state_scope, member->witness.from),
                                  State(m.state_scope, member->witness.to)});
        }
    }
    return out;
}

}  // namespace

Hamming hamming(const State& a, const State& b)
{
    if (a.scope() != b.scope())
        throw std::invalid_argument("hamming distance between states of different scopes");
    const VarMask diff = deposit(a.code() ^ b.code(), a.scope());
    return Hamming{width_of(diff), diff};
}

HammingToSet hamming_to_set(const State& s, const StateSet& targets)
{
    if (targets.empty())
        throw std::invalid_argument("empty target set");
    if (s.scope() != targets.scope())
        throw std::invalid_argument("state and target set over different scopes");
    HammingToSet out{~0u, {}};
    targets.for_each([&](StateCode t) {
        const VarMask diff = deposit(s.code() ^ t, s.scope());
        const unsigned d = width_of(diff);
        if (d < out.distance) {
            out.distance = d;
            out.arg_sets.clear();
        }
        if (d == out.distance)
            out.arg_sets.push_back(diff);
    });
    sort_lex(out.arg_sets);
    return out;
}

State apply_control(ControlSet control, const State& s)
{
    return State(s.scope(), s.code() ^ extract(control.mask, s.scope()));
}

std::vector<VarMask> ControlMatrix::sets(std::size_t i, std::size_t j) const
{
    std::vector<VarMask> out;
    for (const auto& m : entries.at(i).at(j))
        out.push_back(m.set);
    return out;
}

ControlMatrix build_matrix(const std::vector<StateSet>& sources,
                           const std::vector<StateSet>& basins,
                           VarMask index_scope)
{
    if (sources.size() != basins.size())
        throw std::invalid_argument("one basin per attractor is required");
    ControlMatrix m;
    m.p = sources.size();
    m.index_scope = index_scope;
    m.state_scope = sources.empty() ? 0 : sources.front().scope();
    const unsigned width = width_of(m.state_scope);
    m.entries.assign(m.p, std::vector<std::vector<ControlMatrix::Member>>(m.p));

    for (std::size_t i = 0; i < m.p; ++i) {
        if (sources[i].scope() != m.state_scope || basins[i].scope() != m.state_scope)
            throw std::invalid_argument("matrix inputs over different scopes");
        const auto from_codes = sources[i].codes();
        for (std::size_t j = 0; j < m.p; ++j) {
            if (i == j)
                continue;
            std::unordered_map<VarMask, MatrixWitness> found;
            basins[j].for_each([&](StateCode t) {
                const StateCode gt = deposit(t, m.state_scope);
                for (StateCode s : from_codes) {
                    const VarMask diff = (deposit(s, m.state_scope) ^ gt) & index_scope;
                    const MatrixWitness w{s, t};
                    auto [it, inserted] = found.emplace(diff, w);
                    if (!inserted && better_witness(w, it->second, width))
                        it->second = w;
                }
            });
            auto& entry = m.entries[i][j];
            for (const auto& [set, w] : found)
                entry.push_back(ControlMatrix::Member{set, w});
            std::sort(entry.begin(), entry.end(),
                      [](const auto& a, const auto& b) { return lex_less(a.set, b.set); });
        }
    }
    return m;
}

ControlMatrix build_control_matrix(const std::vector<StateSet>& attractors, const std::vector<StateSet>& basins)
{
    if (attractors.size() < 2)
        throw std::invalid_argument("need at least two attractors");
    return build_matrix(attractors, basins, attractors.front().scope());
}

std::vector<std::pair<std::size_t, std::size_t>> label_closure(const ControlMatrix& m, VarMask L)
{
    std::vector<std::pair<std::size_t, std::size_t>> out;
    for (std::size_t i = 0; i < m.p; ++i)
        for (std::size_t j = 0; j < m.p; ++j)
            if (i != j && pick_member(m, i, j, L) != nullptr)
                out.emplace_back(i, j);
    return out;
}

UncontrollablePair::UncontrollablePair(std::size_t from, std::size_t to)
    : std::runtime_error("pair (" + std::to_string(from + 1) + "," + std::to_string(to + 1) + ") uncontrollable")
    , from_(from)
    , to_(to)
{
}

CoverResult minimal_cover(const ControlMatrix& m, const CoverOptions& options)
{
    std::vector<std::vector<VarMask>> families;
    for (std::size_t i = 0; i < m.p; ++i) {
        for (std::size_t j = 0; j < m.p; ++j) {
            if (i == j)
                continue;
            std::vector<VarMask> fam = m.sets(i, j);
            if (fam.empty())
                throw UncontrollablePair(i, j);
            if (options.reduce) {
                std::vector<VarMask> minimal;
                for (VarMask a : fam) {
                    const bool dominated = std::any_of(fam.begin(), fam.end(), [&](VarMask b) {
                        return b != a && (b & ~a) == 0;
                    });
                    if (!dominated)
                        minimal.push_back(a);
                }
                fam = std::move(minimal);
                // the empty set is inclusion-minimal, so it survives alone
                if (fam.size() == 1 && fam.front() == 0)
                    continue;
            }
            std::sort(fam.begin(), fam.end(), size_then_lex);
            families.push_back(std::move(fam));
        }
    }

    VarMask universe = 0;
    for (const auto& fam : families)
        for (VarMask s : fam)
            universe |= s;

    CoverResult result;
    std::set<VarMask> found;

    // Depth-first branching on the unsatisfied family with fewest candidates.
    std::unordered_set<VarMask> visited;
    std::function<void(VarMask, unsigned)> search = [&](VarMask L, unsigned budget) {
        ++result.nodes;
        if (!visited.insert(L).second)
            return;
        const unsigned used = width_of(L);
        const std::vector<VarMask>* pick = nullptr;
        std::size_t pick_count = 0;
        for (const auto& fam : families) {
            bool satisfied = false;
            std::size_t feasible = 0;
            for (VarMask s : fam) {
                if ((s & ~L) == 0) {
                    satisfied = true;
                    break;
                }
                if (used + width_of(s & ~L) <= budget)
                    ++feasible;
            }
            if (satisfied)
                continue;
            if (feasible == 0)
                return;
            if (pick == nullptr || feasible < pick_count) {
                pick = &fam;
                pick_count = feasible;
            }
        }
        if (pick == nullptr) {
            found.insert(L);
            return;
        }
        for (VarMask s : *pick)
            if (used + width_of(s & ~L) <= budget)
                search(L | s, budget);
    };

    if (options.subset_minimal) {
        search(0, width_of(universe));
        std::set<VarMask> minimal;
        for (VarMask a : found) {
            const bool dominated = std::any_of(found.begin(), found.end(), [&](VarMask b) {
                return b != a && (b & ~a) == 0;
            });
            if (!dominated)
                minimal.insert(a);
        }
        result.solutions = to_controls(minimal);
        result.minimum_size = result.solutions.front().size();
        return result;
    }

    for (unsigned depth = 0; depth <= width_of(universe); ++depth) {
        visited.clear();
        search(0, depth);
        if (!found.empty()) {
            result.minimum_size = depth;
            break;
        }
    }
    result.solutions = to_controls(found);
    return result;
}

std::string to_string(Method m) { return m == Method::Global ? "global" : "decomposed"; }

std::vector<StateSet> network_attractors(const BooleanNetwork& bn, const ControlOptions& options)
{
    std::vector<StateSet> out;
    for (auto& a : attractors(full_ts(bn, options)))
        out.push_back(std::move(a.states));
    return out;
}

LatticeSizes lattice_sizes(const BooleanNetwork& bn, const BlockGraph& bg)
{
    LatticeSizes out;
    out.global = std::uint64_t{1} << bn.size();
    for (const auto& b : bg.blocks())
        out.blocks_sum += std::uint64_t{1} << width_of(b.hat);
    return out;
}

ControlSolution target_control(const BooleanNetwork& bn,
                               const State& s,
                               const StateSet& target,
                               const ControlOptions& options)
{
    if (s.scope() != bn.variables() || target.scope() != bn.variables())
        throw std::invalid_argument("target control works on global states");
    const TransitionSystem ts = full_ts(bn, options);
    const StateSet basin = compute_basin(ts, target);
    const HammingToSet h = hamming_to_set(s, basin);

    ControlSolution sol;
    sol.method = Method::Global;
    sol.scope = bn.variables();
    sol.attractors = {target};
    sol.minimum_size = h.distance;
    for (VarMask m : h.arg_sets)
        sol.solutions.push_back(ControlSet{m});
    std::sort(sol.solutions.begin(), sol.solutions.end());
    const ControlSet first = sol.solutions.front();
    sol.witnesses.push_back(Witness{0, 0, first, s, apply_control(first, s)});
    sol.lattice_nodes = std::uint64_t{1} << bn.size();
    return sol;
}

namespace {

ControlSolution empty_solution(const BooleanNetwork& bn, const std::vector<StateSet>& attractors, Method method)
{
    ControlSolution sol;
    sol.method = method;
    sol.scope = bn.variables();
    sol.attractors = attractors;
    sol.minimum_size = 0;
    sol.solutions = {ControlSet{}};
    return sol;
}

ControlSolution global_all_pairs(const BooleanNetwork& bn,
                                 const std::vector<StateSet>& attractors,
                                 const ControlOptions& options)
{
    const TransitionSystem ts = full_ts(bn, options);
    std::vector<StateSet> basins;
    for (const auto& a : attractors)
        basins.push_back(compute_basin(ts, a));
    const ControlMatrix m = build_control_matrix(attractors, basins);
    CoverResult cover = minimal_cover(m, CoverOptions{options.subset_minimal, true});

    ControlSolution sol;
    sol.method = Method::Global;
    sol.scope = bn.variables();
    sol.attractors = attractors;
    sol.minimum_size = cover.minimum_size;
    sol.solutions = cover.solutions;
    sol.witnesses = matrix_witnesses(m, sol.solutions.front().mask);
    sol.lattice_nodes = std::uint64_t{1} << bn.size();
    sol.search_nodes = cover.nodes;
    return sol;
}

ControlSolution decomposed_all_pairs(const BooleanNetwork& bn,
                                     const std::vector<StateSet>& attractors,
                                     const ControlOptions& options)
{
    BlockPipeline pipeline(bn, decompose(bn), options.mode, options.state_cap);
    const BlockGraph& bg = pipeline.graph();
    const std::size_t p = attractors.size();

    std::vector<BlockTrace> traces;
    for (const auto& a : attractors)
        traces.push_back(pipeline.trace(a));

    ControlSolution sol;
    sol.method = Method::Decomposed;
    sol.scope = bn.variables();
    sol.attractors = attractors;

    for (std::size_t j = 0; j < bg.size(); ++j) {
        std::vector<StateSet> sources;
        std::vector<StateSet> basins;
        for (std::size_t r = 0; r < p; ++r) {
            sources.push_back(traces[r].attractor[j]);
            basins.push_back(traces[r].basin[j]);
        }
        BlockSolution bs;
        bs.block = j;
        bs.nodes = bg[j].nodes;
        bs.hat = bg[j].hat;
        bs.matrix = build_matrix(sources, basins, bg[j].hat);
        bs.cover = minimal_cover(bs.matrix, CoverOptions{options.subset_minimal, true});
        bs.witnesses = matrix_witnesses(bs.matrix, bs.cover.solutions.front().mask);
        sol.search_nodes += bs.cover.nodes;
        sol.lattice_nodes += std::uint64_t{1} << width_of(bg[j].hat);
        sol.per_block.push_back(std::move(bs));
    }

    // Every combination of one solution per block; hat sets are disjoint.
    std::set<VarMask> unions{0};
    for (const auto& bs : sol.per_block) {
        std::set<VarMask> next;
        for (VarMask acc : unions)
            for (const auto& c : bs.cover.solutions)
                next.insert(acc | c.mask);
        unions = std::move(next);
    }
    sol.solutions = to_controls(unions);
    sol.minimum_size = sol.solutions.front().size();

    // Witnesses are checked against the cross of the blockwise basins, which
    // is the global basin. A pair the union cannot serve keeps the toggles the
    // blocks proposed and is marked as not reaching its target.
    const VarMask chosen = sol.solutions.front().mask;
    const VarMask all = bn.variables();
    const unsigned n = bn.size();
    std::vector<VarMask> subsets;
    for (VarMask sub = chosen;; sub = (sub - 1) & chosen) {
        subsets.push_back(sub);
        if (sub == 0)
            break;
    }
    std::sort(subsets.begin(), subsets.end(), size_then_lex);

    std::vector<StateSet> global_basins;
    for (const auto& t : traces)
        global_basins.push_back(project(cross(std::span<const StateSet>(t.basin)), all));

    for (std::size_t q = 0; q < p; ++q) {
        std::vector<StateCode> sources = attractors[q].codes();
        std::sort(sources.begin(), sources.end(),
                  [&](StateCode a, StateCode b) { return lex_key(a, n) < lex_key(b, n); });
        for (std::size_t r = 0; r < p; ++r) {
            if (q == r)
                continue;
            std::optional<Witness> found;
            for (VarMask sub : subsets) {
                for (StateCode s : sources)
                    if (global_basins[r].contains(s ^ sub)) {
                        found = Witness{q, r, ControlSet{sub}, State(all, s), State(all, s ^ sub)};
                        break;
                    }
                if (found)
                    break;
            }
            if (!found) {
                VarMask toggles = 0;
                for (const auto& bs : sol.per_block)
                    for (const auto& w : bs.witnesses)
                        if (w.from_attractor == q && w.to_attractor == r)
                            toggles |= w.control.mask;
                const State src(all, sources.front());
                found = Witness{q, r, ControlSet{toggles}, src, apply_control(ControlSet{toggles}, src), false};
            }
            sol.witnesses.push_back(*found);
        }
    }
    return sol;
}

}  // namespace

ControlSolution all_pairs_control(const BooleanNetwork& bn,
                                  const std::vector<StateSet>& attractors,
                                  Method method,
                                  const ControlOptions& options)
{
    if (attractors.size() < 2)
        throw std::invalid_argument("need at least two attractors");
    for (const auto& a : attractors)
        if (a.scope() != bn.variables() || a.empty())
            throw std::invalid_argument("attractors must be nonempty sets of global states");
    return method == Method::Global ? global_all_pairs(bn, attractors, options)
                                    : decomposed_all_pairs(bn, attractors, options);
}

ControlSolution full_control(const BooleanNetwork& bn, Method method, const ControlOptions& options)
{
    const auto atts = network_attractors(bn, options);
    if (atts.size() < 2) {
        ControlSolution sol = empty_solution(bn, atts, method);
        if (method == Method::Global) {
            sol.lattice_nodes = std::uint64_t{1} << bn.size();
        } else {
            sol.lattice_nodes = lattice_sizes(bn, decompose(bn)).blocks_sum;
        }
        return sol;
    }
    return all_pairs_control(bn, atts, method, options);
}

}  // namespace bnctl
