#include "bnctl/verify.hpp"

#include <algorithm>
#include <numeric>
#include <random>

namespace bnctl::verify {

namespace {

void guard(const BooleanNetwork& bn, unsigned limit)
{
    if (bn.size() > limit)
        throw CapacityError("oracle limited to " + std::to_string(limit) + " variables");
}

std::vector<bool> bfs_from(const BooleanNetwork& bn, StateCode s)
{
    std::vector<bool> seen(std::size_t{1} << bn.size(), false);
    std::vector<StateCode> queue{s};
    seen[s] = true;
    for (std::size_t head = 0; head < queue.size(); ++head)
        for (StateCode t : oracle_successors(bn, queue[head]))
            if (!seen[t]) {
                seen[t] = true;
                queue.push_back(t);
            }
    return seen;
}

bool pair_ok(const std::vector<StateCode>& sources, const StateSet& can_reach_target, VarMask control)
{
    for (StateCode s : sources) {
        // all subsets of control, including the empty one
        VarMask sub = control;
        while (true) {
            if (can_reach_target.contains(s ^ sub))
                return true;
            if (sub == 0)
                break;
            sub = (sub - 1) & control;
        }
    }
    return false;
}

bool all_pairs_ok(const std::vector<std::vector<StateCode>>& sources,
                  const std::vector<StateSet>& basins,
                  VarMask control)
{
    for (std::size_t i = 0; i < sources.size(); ++i)
        for (std::size_t j = 0; j < sources.size(); ++j)
            if (i != j && !pair_ok(sources[i], basins[j], control))
                return false;
    return true;
}

// Draws from the raw engine output only, so sequences do not depend on the
// standard library's distribution implementations.
class Draw {
public:
    explicit Draw(std::uint64_t seed)
        : engine_(seed)
    {
    }

    unsigned below(unsigned m) { return static_cast<unsigned>(engine_() % m); }
    bool chance(double p) { return static_cast<double>(engine_() >> 11) * 0x1.0p-53 < p; }

private:
    std::mt19937_64 engine_;
};

BoolExpr conj(BoolExpr a, BoolExpr b)
{
    std::vector<BoolExpr> ops{std::move(a)};
    if (b.kind() == BoolExpr::Kind::And)
        ops.insert(ops.end(), b.operands().begin(), b.operands().end());
    else
        ops.push_back(std::move(b));
    return BoolExpr::conjunction(std::move(ops));
}

BoolExpr disj(BoolExpr a, BoolExpr b)
{
    std::vector<BoolExpr> ops{std::move(a)};
    if (b.kind() == BoolExpr::Kind::Or)
        ops.insert(ops.end(), b.operands().begin(), b.operands().end());
    else
        ops.push_back(std::move(b));
    return BoolExpr::disjunction(std::move(ops));
}

bool is_const(const BoolExpr& e, bool v)
{
    return e.kind() == BoolExpr::Kind::Constant && e.constant_value() == v;
}

// Shannon expansion on vars.front(); row bit k is the value of vars[k].
BoolExpr from_table(const std::vector<unsigned>& vars, const std::vector<bool>& table)
{
    if (std::none_of(table.begin(), table.end(), [](bool b) { return b; }))
        return BoolExpr::constant(false);
    if (std::all_of(table.begin(), table.end(), [](bool b) { return b; }))
        return BoolExpr::constant(true);
    const std::vector<unsigned> rest(vars.begin() + 1, vars.end());
    std::vector<bool> low;
    std::vector<bool> high;
    for (std::size_t r = 0; r < table.size(); r += 2) {
        low.push_back(table[r]);
        high.push_back(table[r + 1]);
    }
    if (low == high)
        return from_table(rest, low);

    BoolExpr x = BoolExpr::variable(vars.front());
    BoolExpr not_x = BoolExpr::negation(x);
    BoolExpr e0 = from_table(rest, low);
    BoolExpr e1 = from_table(rest, high);
    if (is_const(e1, true) && is_const(e0, false))
        return x;
    if (is_const(e1, false) && is_const(e0, true))
        return not_x;
    if (is_const(e0, false))
        return conj(x, e1);
    if (is_const(e1, false))
        return conj(not_x, e0);
    if (is_const(e1, true))
        return disj(x, e0);
    if (is_const(e0, true))
        return disj(not_x, e1);
    return BoolExpr::disjunction({conj(x, e1), conj(not_x, e0)});
}

}  // namespace

std::vector<StateCode> oracle_successors(const BooleanNetwork& bn, StateCode s)
{
    std::vector<StateCode> out;
    bool stable = false;
    for (unsigned i = 0; i < bn.size(); ++i) {
        const bool next = bn.function(i).eval(s);
        if (next == static_cast<bool>((s >> i) & 1u))
            stable = true;
        else
            out.push_back(s ^ (StateCode{1} << i));
    }
    if (stable)
        out.push_back(s);
    return out;
}

bool oracle_reaches(const BooleanNetwork& bn, StateCode s, const StateSet& targets)
{
    guard(bn, kOracleMaxVariables);
    if (targets.scope() != bn.variables())
        throw std::invalid_argument("oracle targets must be global states");
    const auto seen = bfs_from(bn, s);
    bool hit = false;
    targets.for_each([&](StateCode t) { hit = hit || seen[t]; });
    return hit;
}

StateSet oracle_basin(const BooleanNetwork& bn, const StateSet& targets)
{
    guard(bn, kOracleMaxVariables);
    StateSet out(bn.variables());
    const StateCode total = StateCode{1} << bn.size();
    for (StateCode s = 0; s < total; ++s)
        if (oracle_reaches(bn, s, targets))
            out.insert(s);
    return out;
}

std::vector<StateSet> oracle_attractors(const BooleanNetwork& bn)
{
    guard(bn, kOracleControlMaxVariables);
    const StateCode total = StateCode{1} << bn.size();
    std::vector<std::vector<bool>> reach(total);
    for (StateCode s = 0; s < total; ++s)
        reach[s] = bfs_from(bn, s);

    std::vector<StateSet> out;
    std::vector<bool> claimed(total, false);
    for (StateCode s = 0; s < total; ++s) {
        if (claimed[s])
            continue;
        bool attractor = true;
        for (StateCode t = 0; t < total && attractor; ++t)
            if (reach[s][t] && reach[t] != reach[s])
                attractor = false;
        if (!attractor)
            continue;
        StateSet a(bn.variables());
        for (StateCode t = 0; t < total; ++t)
            if (reach[s][t]) {
                a.insert(t);
                claimed[t] = true;
            }
        out.push_back(std::move(a));
    }
    return out;  // already ordered by smallest member
}

bool oracle_control_valid(const BooleanNetwork& bn, const std::vector<StateSet>& attractors, VarMask control)
{
    guard(bn, kOracleMaxVariables);
    std::vector<std::vector<StateCode>> sources;
    std::vector<StateSet> basins;
    for (const auto& a : attractors) {
        sources.push_back(a.codes());
        basins.push_back(oracle_basin(bn, a));
    }
    return all_pairs_ok(sources, basins, control);
}

OracleControl oracle_minimal_control(const BooleanNetwork& bn, const std::vector<StateSet>& attractors)
{
    guard(bn, kOracleControlMaxVariables);
    if (attractors.size() > kOracleMaxAttractors)
        throw CapacityError("oracle limited to " + std::to_string(kOracleMaxAttractors) + " attractors");
    std::vector<std::vector<StateCode>> sources;
    std::vector<StateSet> basins;
    for (const auto& a : attractors) {
        sources.push_back(a.codes());
        basins.push_back(oracle_basin(bn, a));
    }

    const VarMask total = VarMask{1} << bn.size();
    for (unsigned size = 0; size <= bn.size(); ++size) {
        OracleControl result{size, {}};
        for (VarMask c = 0; c < total; ++c)
            if (width_of(c) == size && all_pairs_ok(sources, basins, c))
                result.solutions.push_back(c);
        if (!result.solutions.empty())
            return result;
    }
    throw std::logic_error("no control found; the full variable set always works");
}

std::string generate_random_text(const RandomBNSpec& spec)
{
    if (spec.n < 1 || spec.n > kMaxVariables)
        throw std::invalid_argument("random network size out of range");
    if (spec.k < 1 || spec.k > spec.n)
        throw std::invalid_argument("in-degree must lie in 1..n");
    if (spec.bias < 0.0 || spec.bias > 1.0)
        throw std::invalid_argument("bias must lie in [0, 1]");

    Draw draw(spec.seed);
    std::vector<std::string> names;
    for (unsigned i = 0; i < spec.n; ++i)
        names.push_back("x" + std::to_string(i + 1));

    std::string text;
    for (unsigned i = 0; i < spec.n; ++i) {
        std::vector<unsigned> regulators;
        std::vector<bool> table;
        for (int attempt = 0; attempt <= 10; ++attempt) {
            const unsigned degree = 1 + draw.below(spec.k);
            std::vector<unsigned> pool(spec.n);
            std::iota(pool.begin(), pool.end(), 0u);
            for (unsigned d = 0; d < degree; ++d)
                std::swap(pool[d], pool[d + draw.below(spec.n - d)]);
            regulators.assign(pool.begin(), pool.begin() + degree);
            std::sort(regulators.begin(), regulators.end());
            table.assign(std::size_t{1} << degree, false);
            for (std::size_t r = 0; r < table.size(); ++r)
                table[r] = draw.chance(spec.bias);
            const bool constant = std::all_of(table.begin(), table.end(), [&](bool b) { return b == table[0]; });
            if (!constant)
                break;
        }
        text += names[i] + " = " + to_string(from_table(regulators, table), names) + "\n";
    }
    return text;
}

BooleanNetwork generate_random_bn(const RandomBNSpec& spec)
{
    return parse_network(generate_random_text(spec));
}

}  // namespace bnctl::verify
