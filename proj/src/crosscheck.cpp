#include "bnctl/crosscheck.hpp"

#include "bnctl/verify.hpp"

#include <algorithm>

namespace bnctl::verify {

namespace {

std::string masks_text(const std::vector<VarMask>& masks)
{
    std::string out;
    for (VarMask m : masks) {
        out += '{';
        const auto idx = mask_to_indices(m);
        for (std::size_t k = 0; k < idx.size(); ++k)
            out += (k ? "," : "") + std::to_string(idx[k]);
        out += '}';
    }
    return out.empty() ? "none" : out;
}

std::vector<VarMask> sorted_masks(const std::vector<ControlSet>& sets)
{
    std::vector<VarMask> out;
    for (const auto& c : sets)
        out.push_back(c.mask);
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace

bool CrossCheckReport::ok() const
{
    return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.ok; });
}

CrossCheckReport cross_check(const BooleanNetwork& bn)
{
    if (bn.size() > kOracleControlMaxVariables)
        throw CapacityError("cross-check limited to " + std::to_string(kOracleControlMaxVariables) + " variables");
    CrossCheckReport report;
    auto add = [&](std::string name, bool ok, std::string detail = {}) {
        report.checks.push_back(Check{std::move(name), ok, std::move(detail)});
    };

    const auto ts = build_async_ts(bn, full_universe(bn));
    const auto atts = attractors(ts);
    std::vector<StateSet> att_sets;
    for (const auto& a : atts)
        att_sets.push_back(a.states);
    const auto oracle_atts = oracle_attractors(bn);
    add("attractors", att_sets == oracle_atts,
        std::to_string(att_sets.size()) + " found, oracle " + std::to_string(oracle_atts.size()));

    std::vector<StateSet> basins;
    bool basins_ok = true;
    for (const auto& a : atts) {
        basins.push_back(compute_basin(ts, a));
        basins_ok = basins_ok && basins.back() == oracle_basin(bn, a.states);
    }
    add("basins", basins_ok);

    for (std::size_t i = 0; i < atts.size(); ++i) {
        const StateSet& a = atts[i].states;
        bool witnessed = true;
        a.for_each([&](StateCode s) { witnessed = witnessed && oracle_reaches(bn, s, a); });
        if (!witnessed)
            add("attractor " + std::to_string(i + 1) + " closed", false);
    }

    BlockPipeline pipe(bn, decompose(bn));
    add("block graph acyclic", pipe.graph().is_acyclic());
    const auto composed = decomposed_attractors(pipe);
    bool composed_ok = composed.size() == atts.size();
    for (std::size_t i = 0; composed_ok && i < atts.size(); ++i)
        composed_ok = composed[i].attractor == att_sets[i] && composed[i].basin == basins[i];
    add("block composition", composed_ok,
        std::to_string(composed.size()) + " composed, " + std::to_string(atts.size()) + " global");
    bool blockwise_ok = true;
    for (std::size_t i = 0; i < atts.size(); ++i)
        blockwise_ok = blockwise_ok && blockwise_basin(pipe, att_sets[i]) == basins[i];
    add("blockwise basins", blockwise_ok);

    if (atts.size() >= 2 && atts.size() <= kOracleMaxAttractors) {
        const auto oracle = oracle_minimal_control(bn, att_sets);
        const auto global = all_pairs_control(bn, att_sets, Method::Global);
        const auto got = sorted_masks(global.solutions);
        add("global control", global.minimum_size == oracle.minimum_size && got == oracle.solutions,
            "solutions " + masks_text(got) + ", oracle " + masks_text(oracle.solutions));

        const auto blockwise = all_pairs_control(bn, att_sets, Method::Decomposed);
        for (const auto& c : blockwise.solutions)
            if (!oracle_control_valid(bn, att_sets, c.mask))
                report.notes.push_back("decomposed solution " + masks_text({c.mask}) + " fails the soundness oracle");
        if (blockwise.minimum_size != global.minimum_size)
            report.notes.push_back("decomposed minimum " + std::to_string(blockwise.minimum_size) + " vs global " +
                                   std::to_string(global.minimum_size));
    }
    return report;
}

}  // namespace bnctl::verify
