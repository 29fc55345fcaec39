// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any failure.

#include "fixtures.hpp"
#include "bnctl/report.hpp"
#include "bnctl/verify.hpp"

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <sstream>

using namespace bnctl;
using fixtures::family;
using fixtures::idx;
using fixtures::set_of;

namespace {

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point t0)
{
    return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

std::string family_text(const fixtures::Family& f)
{
    std::string out;
    for (VarMask m : f) {
        out += '{';
        const auto ix = mask_to_indices(m);
        for (std::size_t k = 0; k < ix.size(); ++k)
            out += (k ? "," : "") + std::to_string(ix[k]);
        out += '}';
    }
    return out;
}

struct Outcome {
    bool ok = true;
    std::string detail;

    void require(bool cond, const std::string& what)
    {
        if (!cond) {
            ok = false;
            detail += (detail.empty() ? "" : "; ") + what;
        }
    }
};

int failures = 0;

void report(int id, const std::string& title, const Outcome& o)
{
    std::cout << "AC" << id << ' ' << (o.ok ? "PASS" : "FAIL") << ' ' << title;
    if (!o.detail.empty())
        std::cout << " [" << o.detail << ']';
    std::cout << std::endl;
    if (!o.ok)
        ++failures;
}

void run(int id, const std::string& title, const std::function<Outcome()>& body)
{
    Outcome o;
    try {
        o = body();
    } catch (const std::exception& e) {
        o.ok = false;
        o.detail = std::string("exception: ") + e.what();
    }
    report(id, title, o);
}

struct Golden {
    BooleanNetwork bn = fixtures::four_var();
    TransitionSystem ts = build_async_ts(bn, full_universe(bn));
    std::vector<Attractor> atts = attractors(ts);
};

struct CorpusEntry {
    std::uint64_t seed = 0;
    verify::RandomBNSpec spec;
    BooleanNetwork bn;
};

// Seeded networks with 3 <= n <= 8 and k in {1, 2}; only instances with at
// most four attractors are kept so the exhaustive control oracle applies.
std::vector<CorpusEntry> build_corpus(std::size_t size, std::size_t& skipped)
{
    std::vector<CorpusEntry> out;
    skipped = 0;
    for (std::uint64_t seed = 1; out.size() < size; ++seed) {
        const verify::RandomBNSpec spec{static_cast<unsigned>(3 + seed % 6), static_cast<unsigned>(1 + seed % 2), seed, 0.5};
        BooleanNetwork bn = verify::generate_random_bn(spec);
        if (network_attractors(bn).size() > 4) {
            ++skipped;
            continue;
        }
        out.push_back(CorpusEntry{seed, spec, std::move(bn)});
    }
    return out;
}

}  // namespace

int main()
{
    const auto suite_start = Clock::now();

    run(1, "golden attractors {1000},{1100},{1010}", [] {
        Outcome o;
        const auto t0 = Clock::now();
        const Golden g;
        const double ms = ms_since(t0);
        std::vector<StateSet> got;
        for (const auto& a : g.atts)
            got.push_back(a.states);
        o.require(got == std::vector<StateSet>{set_of(4, {"1000"}), set_of(4, {"1100"}), set_of(4, {"1010"})},
                  "attractor sets differ");
        o.require(ms < 1000.0, "took " + std::to_string(ms) + " ms");
        o.detail += (o.detail.empty() ? "" : "; ") + std::to_string(ms) + " ms";
        return o;
    });

    run(2, "golden basins and shared states", [] {
        Outcome o;
        const Golden g;
        const StateSet b1 = compute_basin(g.ts, g.atts[0]);
        const StateSet b2 = compute_basin(g.ts, g.atts[1]);
        const StateSet b3 = compute_basin(g.ts, g.atts[2]);
        o.require(b1 == set_of(4, {"1000", "0000", "0100", "0110", "0111", "0101"}), "bas(A1)");
        o.require(b2 == set_of(4, {"1100", "1110", "1111", "1101"}), "bas(A2)");
        o.require(b3 == set_of(4, {"1010", "1011", "1001", "0010", "0011", "0001", "0110", "0111", "0101"}), "bas(A3)");
        const StateSet shared = set_of(4, {"0110", "0111", "0101"});
        o.require(shared.is_subset_of(b1) && shared.is_subset_of(b3), "shared states");
        return o;
    });

    run(3, "golden 2x2 control matrix", [] {
        Outcome o;
        const Golden g;
        const auto m = build_control_matrix({g.atts[1].states, g.atts[2].states},
                                            {compute_basin(g.ts, g.atts[1]), compute_basin(g.ts, g.atts[2])});
        o.require(family(m.sets(0, 1)) == family({{1, 3}, {1, 4}, {2, 3}, {2, 4}, {1, 2, 3}, {1, 2, 4}, {1, 3, 4},
                                                   {2, 3, 4}, {1, 2, 3, 4}}),
                  "M_23 = " + family_text(family(m.sets(0, 1))));
        o.require(family(m.sets(1, 0)) == family({{2}, {2, 3}, {2, 4}, {2, 3, 4}}),
                  "M_32 = " + family_text(family(m.sets(1, 0))));
        return o;
    });

    run(4, "golden all-pairs and full control", [] {
        Outcome o;
        const Golden g;
        const std::vector<StateSet> pair{g.atts[1].states, g.atts[2].states};
        for (Method m : {Method::Global, Method::Decomposed}) {
            const auto sol = all_pairs_control(g.bn, pair, m);
            o.require(sol.minimum_size == 2 && family(sol.solutions) == family({{2, 3}, {2, 4}}),
                      to_string(m) + " all-pairs gave " + family_text(family(sol.solutions)));
        }
        std::vector<StateSet> all;
        for (const auto& a : g.atts)
            all.push_back(a.states);
        const auto oracle = verify::oracle_minimal_control(g.bn, all);
        const auto full = full_control(g.bn, Method::Global);
        o.require(full.minimum_size == oracle.minimum_size && family(full.solutions) == family(oracle.solutions),
                  "full control " + family_text(family(full.solutions)) + " vs oracle " +
                      family_text(family(oracle.solutions)));
        if (o.ok)
            o.detail = "full control " + family_text(family(full.solutions)) + " equals the exhaustive oracle";
        return o;
    });

    run(5, "golden decomposition", [] {
        Outcome o;
        const Golden g;
        const auto bg = decompose(g.bn);
        o.require(bg.size() == 2, "block count " + std::to_string(bg.size()));
        if (bg.size() != 2)
            return o;
        o.require(bg[0].nodes == idx({1, 2}) && bg[1].nodes == idx({2, 3, 4}), "block nodes");
        o.require(bg[1].control_nodes == idx({2}), "control node");
        o.require(bg[0].kind == BlockKind::Elementary && bg[1].kind == BlockKind::NonElementary, "block kinds");

        BlockPipeline pipe(g.bn, bg);
        const VarMask b1 = idx({1, 2});
        const auto t2 = pipe.trace(g.atts[1].states);
        const auto t3 = pipe.trace(g.atts[2].states);
        o.require(t2.attractor[0] == StateSet::from_strings(b1, {"11"}) &&
                      t2.basin[0] == StateSet::from_strings(b1, {"11"}),
                  "block-1 basin of 11");
        o.require(t3.attractor[0] == StateSet::from_strings(b1, {"10"}) &&
                      t3.basin[0] == StateSet::from_strings(b1, {"10", "00", "01"}),
                  "block-1 basin of 10");

        const auto sol = all_pairs_control(g.bn, {g.atts[1].states, g.atts[2].states}, Method::Decomposed);
        const auto& m1 = sol.per_block.at(0).matrix;
        // expected entries are keyed (target, source)
        const auto table_row2_col3 = family({{2}});
        const auto table_row3_col2 = family({{1}, {2}, {1, 2}});
        o.require(family(m1.sets(1, 0)) == table_row2_col3, "M1 from 1010 into bas(1100): " + family_text(family(m1.sets(1, 0))));
        o.require(family(m1.sets(0, 1)) == table_row3_col2, "M1 from 1100 into bas(1010): " + family_text(family(m1.sets(0, 1))));
        o.require(family(sol.per_block[0].cover.solutions) == family({{2}}), "C1");
        o.require(family(sol.per_block.at(1).cover.solutions) == family({{3}, {4}}), "C2");
        return o;
    });

    run(6, "lattice sizes 16 vs 4+4=8 in bench output", [] {
        Outcome o;
        const Golden g;
        const std::string csv = to_csv(bench_network(g.bn, max_in_degree(g.bn), 0));
        const std::string tail = csv.substr(csv.find_last_of(',', csv.find_last_of(',') - 1) + 1);
        o.require(tail == "16,8", "bench row " + csv);
        o.detail = o.ok ? "row " + csv : o.detail;
        return o;
    });

    std::size_t skipped = 0;
    const auto corpus_start = Clock::now();
    const auto corpus = build_corpus(240, skipped);

    run(7, "oracle equivalence on random networks", [&] {
        Outcome o;
        std::size_t basins = 0;
        std::size_t controls = 0;
        std::size_t unsound = 0;
        std::size_t gaps = 0;
        std::ostringstream log;
        for (const auto& e : corpus) {
            const auto ts = build_async_ts(e.bn, full_universe(e.bn));
            const auto atts = attractors(ts);
            std::vector<StateSet> sets;
            for (const auto& a : atts) {
                sets.push_back(a.states);
                ++basins;
                if (compute_basin(ts, a) != verify::oracle_basin(e.bn, a.states))
                    o.require(false, "(a) basin mismatch at seed " + std::to_string(e.seed));
            }

            const auto oracle = verify::oracle_minimal_control(e.bn, sets);
            const auto global = full_control(e.bn, Method::Global);
            ++controls;
            if (global.minimum_size != oracle.minimum_size || family(global.solutions) != family(oracle.solutions))
                o.require(false, "(b) global control mismatch at seed " + std::to_string(e.seed));

            const auto blockwise = full_control(e.bn, Method::Decomposed);
            for (const auto& c : blockwise.solutions)
                if (!verify::oracle_control_valid(e.bn, sets, c.mask)) {
                    ++unsound;
                    log << "  seed " << e.seed << " n=" << e.spec.n << " k=" << e.spec.k << ": decomposed "
                        << family_text({c.mask}) << " unsound\n";
                }
            if (blockwise.minimum_size != global.minimum_size) {
                ++gaps;
                log << "  seed " << e.seed << " cardinality gap: decomposed " << blockwise.minimum_size
                    << " vs global " << global.minimum_size << '\n';
            }
        }
        if (unsound > 0)
            o.require(false, "(c) " + std::to_string(unsound) + " unsound decomposed solutions");
        const double ms = ms_since(corpus_start);
        o.require(ms < 300000.0, "runtime " + std::to_string(ms) + " ms");
        std::cout << log.str();
        o.detail += (o.detail.empty() ? "" : "; ") + std::to_string(corpus.size()) + " networks, " +
                    std::to_string(static_cast<long>(ms)) + " ms, " +
                    std::to_string(basins) + " basins, " + std::to_string(controls) + " control problems, " +
                    std::to_string(gaps) + " cardinality gaps logged, " + std::to_string(skipped) +
                    " networks with more than four attractors skipped";
        o.require(corpus.size() >= 200, "corpus too small");
        return o;
    });

    run(8, "attractor and basin preservation under block composition", [&] {
        Outcome o;
        std::size_t attractors_checked = 0;
        for (const auto& e : corpus) {
            const auto ts = build_async_ts(e.bn, full_universe(e.bn));
            const auto atts = attractors(ts);
            BlockPipeline pipe(e.bn, decompose(e.bn));
            const auto composed = decomposed_attractors(pipe);
            bool same = composed.size() == atts.size();
            for (std::size_t i = 0; same && i < atts.size(); ++i)
                same = composed[i].attractor == atts[i].states;
            if (!same)
                o.require(false, "attractors differ at seed " + std::to_string(e.seed));
            for (const auto& a : atts) {
                ++attractors_checked;
                if (blockwise_basin(pipe, a.states) != compute_basin(ts, a))
                    o.require(false, "basin differs at seed " + std::to_string(e.seed));
            }
        }
        o.detail += (o.detail.empty() ? "" : "; ") + std::to_string(attractors_checked) + " attractors";
        return o;
    });

    run(9, "structural invariants", [&] {
        Outcome o;
        std::vector<BooleanNetwork> nets{fixtures::four_var()};
        for (const auto& e : corpus)
            nets.push_back(e.bn);
        for (std::size_t k = 0; k < nets.size(); ++k) {
            const auto& bn = nets[k];
            const std::string where = k == 0 ? "golden network" : "seed " + std::to_string(corpus[k - 1].seed);
            const auto bg = decompose(bn);
            if (!bg.is_acyclic())
                o.require(false, "block graph cycle in " + where);
            for (std::size_t j = 0; j < bg.size(); ++j)
                if (!is_elementary(bn, bg.prefix_union(j)))
                    o.require(false, "prefix union " + std::to_string(j + 1) + " not elementary in " + where);

            const StateCode total = StateCode{1} << bn.size();
            for (UpdateMode mode : {UpdateMode::Asynchronous, UpdateMode::Synchronous}) {
                const auto ts = TransitionSystem::build(bn, full_universe(bn), mode);
                std::size_t forward = 0;
                std::size_t backward = 0;
                bool consistent = true;
                for (StateCode s = 0; s < total; ++s) {
                    for (StateCode t : ts.successors(s)) {
                        ++forward;
                        const auto p = ts.predecessors(t);
                        consistent = consistent && std::find(p.begin(), p.end(), s) != p.end();
                    }
                    backward += ts.predecessors(s).size();
                }
                if (!consistent || forward != backward)
                    o.require(false, "pred/succ mismatch in " + where);
            }

            for (StateCode s = 0; s < total; ++s)
                for (VarMask c = 0; c < total; ++c) {
                    const State st(bn.variables(), s);
                    if (apply_control(ControlSet{c}, apply_control(ControlSet{c}, st)) != st)
                        o.require(false, "apply_control not an involution in " + where);
                }
        }
        o.detail += (o.detail.empty() ? "" : "; ") + std::to_string(nets.size()) + " networks";
        return o;
    });

    std::printf("total %.1f ms, %d failed\n", ms_since(suite_start), failures);
    return failures == 0 ? 0 : 1;
}
