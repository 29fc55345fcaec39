// bnctl: attractors, basins and minimal control sets of Boolean networks.
//
// Exit codes: 0 success, 1 usage or input error, 2 state cap exceeded,
// 3 uncontrollable pair, 4 verification mismatch.

#include "bnctl/control.hpp"
#include "bnctl/crosscheck.hpp"
#include "bnctl/report.hpp"
#include "bnctl/verify.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

namespace {

using namespace bnctl;
using nlohmann::json;

enum Exit { kOk = 0, kUsage = 1, kCap = 2, kUncontrollable = 3, kMismatch = 4 };

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Config {
    std::string input;
    std::string format = "text";
    std::string update = "async";
    std::string method = "global";
    std::string mode;
    std::string from;
    std::string to;
    std::string attractors;
    bool all = false;
    bool basins = false;
    bool subset_minimal = false;
    unsigned vars = 8;
    unsigned in_degree = 2;
    std::uint64_t seed = 1;
    double bias = 0.5;
    unsigned count = 10;
    std::string output;
    std::string seeds;
};

std::size_t state_cap()
{
    const char* env = std::getenv("BNCTL_STATE_CAP");
    if (env == nullptr || *env == '\0')
        return kDefaultStateCap;
    char* end = nullptr;
    const unsigned long long v = std::strtoull(env, &end, 10);
    if (*end != '\0' || v == 0)
        throw UsageError("BNCTL_STATE_CAP must be a positive integer");
    return static_cast<std::size_t>(v);
}

ControlOptions control_options(const Config& cfg)
{
    ControlOptions opt;
    if (cfg.update == "sync")
        opt.mode = UpdateMode::Synchronous;
    opt.state_cap = state_cap();
    opt.subset_minimal = cfg.subset_minimal;
    return opt;
}

BooleanNetwork load(const Config& cfg, const ControlOptions& opt)
{
    BooleanNetwork bn = load_network(cfg.input);
    if ((std::size_t{1} << bn.size()) > opt.state_cap)
        throw CapacityError("network has 2^" + std::to_string(bn.size()) + " states, above the cap of " +
                            std::to_string(opt.state_cap));
    return bn;
}

std::ofstream open_output(const std::string& path)
{
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw UsageError("cannot write '" + path + "'");
    return out;
}

State parse_state(const BooleanNetwork& bn, const std::string& bits)
{
    if (bits.size() != bn.size())
        throw UsageError("state '" + bits + "' must have " + std::to_string(bn.size()) + " characters");
    return State::parse(bits, bn.variables());
}

const StateSet& attractor_of(const std::vector<StateSet>& atts, const State& s)
{
    for (const auto& a : atts)
        if (a.contains(s.code()))
            return a;
    throw UsageError("state " + s.to_string() + " is not in any attractor");
}

std::vector<std::string> split_list(const std::string& text)
{
    std::vector<std::string> out;
    std::stringstream in(text);
    std::string item;
    while (std::getline(in, item, ','))
        if (!item.empty())
            out.push_back(item);
    return out;
}

int cmd_attractors(const Config& cfg)
{
    const ControlOptions opt = control_options(cfg);
    const BooleanNetwork bn = load(cfg, opt);
    const auto ts = TransitionSystem::build(bn, full_universe(bn), opt.mode, opt.state_cap);
    const auto atts = attractors(ts);

    if (cfg.format == "json") {
        json doc;
        doc["attractors"] = json::array();
        for (const auto& a : atts) {
            json item{{"states", a.states.strings()}};
            if (cfg.basins) {
                const StateSet bas = compute_basin(ts, a);
                item["basin_size"] = bas.size();
                item["basin"] = bas.strings();
            }
            doc["attractors"].push_back(item);
        }
        std::cout << doc.dump(2) << '\n';
        return kOk;
    }
    for (const auto& a : atts) {
        std::cout << "attractor " << a.id + 1;
        for (const auto& s : a.states.strings())
            std::cout << ' ' << s;
        if (cfg.basins)
            std::cout << " basin " << compute_basin(ts, a).size();
        std::cout << '\n';
    }
    return kOk;
}

void print(const Config& cfg, const ControlSolution& sol)
{
    if (cfg.format == "json")
        std::cout << to_json(sol).dump(2) << '\n';
    else
        std::cout << to_text(sol);
}

int cmd_control(const Config& cfg)
{
    const ControlOptions opt = control_options(cfg);
    const BooleanNetwork bn = load(cfg, opt);
    const auto atts = network_attractors(bn, opt);

    if (cfg.mode == "target") {
        if (cfg.from.empty() || cfg.to.empty())
            throw UsageError("--mode target needs --from and --to");
        if (cfg.method != "global")
            throw UsageError("target control is solved globally only");
        const State from = parse_state(bn, cfg.from);
        const StateSet& target = attractor_of(atts, parse_state(bn, cfg.to));
        print(cfg, target_control(bn, from, target, opt));
        return kOk;
    }

    std::vector<StateSet> chosen;
    if (cfg.mode == "full" || cfg.all) {
        if (!cfg.attractors.empty())
            throw UsageError("--attractors and --all are exclusive");
        chosen = atts;
    } else if (cfg.mode == "all-pairs") {
        if (cfg.attractors.empty())
            throw UsageError("--mode all-pairs needs --attractors or --all");
        for (const auto& bits : split_list(cfg.attractors)) {
            const StateSet& a = attractor_of(atts, parse_state(bn, bits));
            if (std::find(chosen.begin(), chosen.end(), a) != chosen.end())
                throw UsageError("attractor of " + bits + " listed twice");
            chosen.push_back(a);
        }
    } else {
        throw UsageError("unknown mode '" + cfg.mode + "'");
    }

    auto solve = [&](Method m) {
        return chosen.size() < 2 ? full_control(bn, m, opt) : all_pairs_control(bn, chosen, m, opt);
    };
    if (chosen.size() < 2 && cfg.mode != "full" && !cfg.all)
        throw UsageError("all-pairs control needs at least two attractors");

    if (cfg.method != "both") {
        print(cfg, solve(cfg.method == "decomposed" ? Method::Decomposed : Method::Global));
        return kOk;
    }

    const ControlSolution g = solve(Method::Global);
    const ControlSolution d = solve(Method::Decomposed);
    const Comparison cmp = compare(g, d);
    if (cmp.decomposed_size > cmp.global_size)
        std::cerr << "warning: decomposed minimum " << cmp.decomposed_size << " exceeds global minimum "
                  << cmp.global_size << '\n';
    if (cfg.format == "json") {
        json doc;
        doc["results"] = json::array({to_json(g), to_json(d)});
        doc["comparison"] = {{"global_size", cmp.global_size},
                             {"decomposed_size", cmp.decomposed_size},
                             {"same_solutions", cmp.same_solutions}};
        std::cout << doc.dump(2) << '\n';
    } else {
        std::cout << to_text(g) << to_text(d) << "comparison global " << cmp.global_size << " decomposed "
                  << cmp.decomposed_size << " same_solutions " << (cmp.same_solutions ? "yes" : "no") << '\n';
    }
    return kOk;
}

int cmd_random(const Config& cfg)
{
    const std::string text = verify::generate_random_text({cfg.vars, cfg.in_degree, cfg.seed, cfg.bias});
    if (cfg.output.empty() || cfg.output == "-") {
        std::cout << text;
    } else {
        auto out = open_output(cfg.output);
        out << text;
    }
    return kOk;
}

std::pair<std::uint64_t, std::uint64_t> parse_range(const std::string& text)
{
    const auto dots = text.find("..");
    try {
        if (dots == std::string::npos) {
            const std::uint64_t v = std::stoull(text);
            return {v, v};
        }
        const std::uint64_t lo = std::stoull(text.substr(0, dots));
        const std::uint64_t hi = std::stoull(text.substr(dots + 2));
        if (hi < lo)
            throw UsageError("empty seed range '" + text + "'");
        return {lo, hi};
    } catch (const std::logic_error&) {
        throw UsageError("seed range must look like A..B, got '" + text + "'");
    }
}

bool report_checks(const std::string& label, const verify::CrossCheckReport& r)
{
    for (const auto& c : r.checks) {
        std::cout << (c.ok ? "ok " : "MISMATCH ") << label << ' ' << c.name;
        if (!c.detail.empty())
            std::cout << " (" << c.detail << ')';
        std::cout << '\n';
    }
    for (const auto& n : r.notes)
        std::cout << "note " << label << ' ' << n << '\n';
    return r.ok();
}

int cmd_verify(const Config& cfg)
{
    const ControlOptions opt = control_options(cfg);
    if (opt.mode != UpdateMode::Asynchronous)
        throw UsageError("verify checks the asynchronous semantics only");
    bool ok = true;
    if (!cfg.input.empty()) {
        const BooleanNetwork bn = load(cfg, opt);
        ok = report_checks(cfg.input, verify::cross_check(bn)) && ok;
    }
    if (!cfg.seeds.empty()) {
        const auto [lo, hi] = parse_range(cfg.seeds);
        for (std::uint64_t s = lo; s <= hi; ++s) {
            const BooleanNetwork bn = verify::generate_random_bn({cfg.vars, cfg.in_degree, s, cfg.bias});
            ok = report_checks("seed " + std::to_string(s), verify::cross_check(bn)) && ok;
        }
    }
    if (cfg.input.empty() && cfg.seeds.empty())
        throw UsageError("verify needs FILE or --seeds");
    return ok ? kOk : kMismatch;
}

int cmd_bench(const Config& cfg)
{
    const ControlOptions opt = control_options(cfg);
    std::vector<BenchRow> rows;
    if (!cfg.input.empty()) {
        const BooleanNetwork bn = load(cfg, opt);
        rows.push_back(bench_network(bn, max_in_degree(bn), 0, opt));
    } else {
        for (unsigned c = 0; c < cfg.count; ++c) {
            const std::uint64_t s = cfg.seed + c;
            const BooleanNetwork bn = verify::generate_random_bn({cfg.vars, cfg.in_degree, s, cfg.bias});
            rows.push_back(bench_network(bn, cfg.in_degree, s, opt));
        }
    }
    std::ostringstream csv;
    csv << kBenchHeader << '\n';
    for (const auto& r : rows)
        csv << to_csv(r) << '\n';
    if (cfg.output.empty() || cfg.output == "-") {
        std::cout << csv.str();
    } else {
        auto out = open_output(cfg.output);
        out << csv.str();
    }
    return kOk;
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Attractors, basins and minimal control sets of Boolean networks"};
    app.require_subcommand(1);
    Config cfg;

    const std::vector<std::string> formats{"text", "json"};
    const std::vector<std::string> updates{"async", "sync"};

    auto* att = app.add_subcommand("attractors", "List attractors in canonical order");
    att->add_option("FILE", cfg.input, "Network file")->required()->check(CLI::ExistingFile);
    att->add_flag("--basins", cfg.basins, "Also compute basins");
    att->add_option("--format", cfg.format)->check(CLI::IsMember(formats));
    att->add_option("--update", cfg.update)->check(CLI::IsMember(updates));

    auto* ctl = app.add_subcommand("control", "Minimal existential control");
    ctl->add_option("FILE", cfg.input, "Network file")->required()->check(CLI::ExistingFile);
    ctl->add_option("--mode", cfg.mode)->required()->check(CLI::IsMember({"target", "all-pairs", "full"}));
    ctl->add_option("--from", cfg.from, "Source state (target mode)");
    ctl->add_option("--to", cfg.to, "A state of the target attractor (target mode)");
    auto* list = ctl->add_option("--attractors", cfg.attractors, "Comma-separated attractor states");
    ctl->add_flag("--all", cfg.all, "Use every attractor")->excludes(list);
    ctl->add_option("--method", cfg.method)->check(CLI::IsMember({"global", "decomposed", "both"}));
    ctl->add_option("--update", cfg.update)->check(CLI::IsMember(updates));
    ctl->add_option("--format", cfg.format)->check(CLI::IsMember(formats));
    ctl->add_flag("--subset-minimal", cfg.subset_minimal, "Report every inclusion-minimal cover");

    auto* rnd = app.add_subcommand("random", "Generate a random network");
    rnd->add_option("--vars", cfg.vars)->required()->check(CLI::Range(1u, kMaxVariables));
    rnd->add_option("--in-degree", cfg.in_degree)->required()->check(CLI::PositiveNumber);
    rnd->add_option("--seed", cfg.seed)->required();
    rnd->add_option("--bias", cfg.bias)->check(CLI::Range(0.0, 1.0));
    rnd->add_option("-o,--output", cfg.output, "Output file (default stdout)");

    auto* ver = app.add_subcommand("verify", "Cross-check against brute-force oracles");
    ver->add_option("FILE", cfg.input, "Network file")->check(CLI::ExistingFile);
    ver->add_option("--seeds", cfg.seeds, "Also check random networks with seeds A..B");
    ver->add_option("--vars", cfg.vars, "Size of random networks")->check(CLI::Range(1u, verify::kOracleControlMaxVariables));
    ver->add_option("--in-degree", cfg.in_degree)->check(CLI::PositiveNumber);

    auto* bench = app.add_subcommand("bench", "Time global against decomposed full control");
    bench->add_option("FILE", cfg.input, "Bench this network instead of random ones")->check(CLI::ExistingFile);
    bench->add_option("--vars", cfg.vars)->check(CLI::Range(1u, kMaxVariables));
    bench->add_option("--in-degree", cfg.in_degree)->check(CLI::PositiveNumber);
    bench->add_option("--count", cfg.count)->check(CLI::PositiveNumber);
    bench->add_option("--seed", cfg.seed);
    bench->add_option("--bias", cfg.bias)->check(CLI::Range(0.0, 1.0));
    bench->add_option("-o,--output", cfg.output, "CSV file (default stdout)");
    bench->add_option("--update", cfg.update)->check(CLI::IsMember(updates));

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kOk : kUsage;
    }

    try {
        if (att->parsed())
            return cmd_attractors(cfg);
        if (ctl->parsed())
            return cmd_control(cfg);
        if (rnd->parsed())
            return cmd_random(cfg);
        if (ver->parsed())
            return cmd_verify(cfg);
        return cmd_bench(cfg);
    } catch (const CapacityError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kCap;
    } catch (const UncontrollablePair& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kUncontrollable;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kUsage;
    }
}
