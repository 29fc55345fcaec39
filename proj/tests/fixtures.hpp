#pragma once

#include "bnctl/control.hpp"
#include "bnctl/decomp.hpp"
#include "bnctl/network.hpp"
#include "bnctl/transition.hpp"

#include <algorithm>
#include <set>
#include <string>
#include <vector>

namespace fixtures {

inline constexpr const char* kFourVar =
    "x1 = !x2 | (x1 & x2)\n"
    "x2 = x1 & x2\n"
    "x3 = x4 | (!x2 & x3)\n"
    "x4 = !x3 & x4\n";

inline bnctl::BooleanNetwork four_var() { return bnctl::parse_network(kFourVar); }

// Global state code of a 0/1 string, variable 1 leftmost.
inline bnctl::StateCode code(const std::string& bits)
{
    return bnctl::State::parse(bits, bnctl::full_mask(static_cast<unsigned>(bits.size()))).code();
}

inline bnctl::StateSet set_of(unsigned n, std::initializer_list<std::string_view> states)
{
    return bnctl::StateSet::from_strings(bnctl::full_mask(n), states);
}

inline bnctl::VarMask idx(std::initializer_list<unsigned> one_based) { return bnctl::indices_to_mask(one_based); }

using Family = std::set<bnctl::VarMask>;

inline Family family(std::initializer_list<std::initializer_list<unsigned>> sets)
{
    Family out;
    for (auto f : sets)
        out.insert(bnctl::indices_to_mask(f));
    return out;
}

inline Family family(const std::vector<bnctl::VarMask>& sets) { return Family(sets.begin(), sets.end()); }

inline Family family(const std::vector<bnctl::ControlSet>& sets)
{
    Family out;
    for (const auto& c : sets)
        out.insert(c.mask);
    return out;
}

}  // namespace fixtures
