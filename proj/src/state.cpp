#include "bnctl/state.hpp"

#include <algorithm>

namespace bnctl {

VarMask full_mask(unsigned n)
{
    if (n > kMaxVariables)
        throw std::out_of_range("more than " + std::to_string(kMaxVariables) + " variables");
    return n == 32 ? ~VarMask{0} : ((VarMask{1} << n) - 1);
}

std::vector<unsigned> mask_to_indices(VarMask mask)
{
    std::vector<unsigned> out;
    out.reserve(width_of(mask));
    while (mask != 0) {
        out.push_back(static_cast<unsigned>(std::countr_zero(mask)) + 1);
        mask &= mask - 1;
    }
    return out;
}

VarMask indices_to_mask(std::span<const unsigned> one_based)
{
    VarMask mask = 0;
    for (unsigned i : one_based) {
        if (i == 0 || i > kMaxVariables)
            throw std::out_of_range("variable index " + std::to_string(i) + " out of range");
        mask |= VarMask{1} << (i - 1);
    }
    return mask;
}

VarMask indices_to_mask(std::initializer_list<unsigned> one_based)
{
    return indices_to_mask(std::span<const unsigned>(one_based.begin(), one_based.size()));
}

StateCode deposit(StateCode local, VarMask scope)
{
    StateCode out = 0;
    for (StateCode bit = 1; scope != 0; bit <<= 1) {
        const VarMask low = scope & -scope;
        if (local & bit)
            out |= low;
        scope ^= low;
    }
    return out;
}

StateCode extract(StateCode global, VarMask scope)
{
    StateCode out = 0;
    for (StateCode bit = 1; scope != 0; bit <<= 1) {
        const VarMask low = scope & -scope;
        if (global & low)
            out |= bit;
        scope ^= low;
    }
    return out;
}

StateCode lex_key(StateCode code, unsigned width)
{
    StateCode key = 0;
    for (unsigned k = 0; k < width; ++k)
        key = (key << 1) | ((code >> k) & 1u);
    return key;
}

std::string code_to_string(StateCode code, unsigned width)
{
    std::string s(width, '0');
    for (unsigned k = 0; k < width; ++k)
        if ((code >> k) & 1u)
            s[k] = '1';
    return s;
}

State::State(VarMask scope, StateCode code)
    : scope_(scope)
    , code_(code)
{
    if (width_of(scope) < 32 && (code >> width_of(scope)) != 0)
        throw std::invalid_argument("state code wider than its scope");
}

State State::parse(std::string_view bits, VarMask scope)
{
    if (bits.size() != width_of(scope))
        throw std::invalid_argument("state '" + std::string(bits) + "' must have " +
                                    std::to_string(width_of(scope)) + " characters");
    StateCode code = 0;
    for (std::size_t k = 0; k < bits.size(); ++k) {
        if (bits[k] == '1')
            code |= StateCode{1} << k;
        else if (bits[k] != '0')
            throw std::invalid_argument("state '" + std::string(bits) + "' is not a 0/1 string");
    }
    return State(scope, code);
}

bool State::value(unsigned var) const
{
    const VarMask bit = VarMask{1} << var;
    if ((scope_ & bit) == 0)
        throw std::out_of_range("variable outside the state's scope");
    return (deposit(code_, scope_) & bit) != 0;
}

StateSet::StateSet(VarMask scope)
    : scope_(scope)
{
    if (width_of(scope) > kMaxVariables)
        throw CapacityError("state set scope wider than " + std::to_string(kMaxVariables));
    words_.assign(std::max<std::size_t>(1, capacity() / 64), 0);
}

StateSet StateSet::full(VarMask scope)
{
    StateSet s(scope);
    const std::size_t cap = s.capacity();
    if (cap >= 64) {
        std::fill(s.words_.begin(), s.words_.end(), ~std::uint64_t{0});
    } else {
        s.words_[0] = (std::uint64_t{1} << cap) - 1;
    }
    return s;
}

StateSet StateSet::from_strings(VarMask scope, std::initializer_list<std::string_view> states)
{
    StateSet out(scope);
    for (auto str : states)
        out.insert(State::parse(str, scope).code());
    return out;
}

StateSet StateSet::from_strings(VarMask scope, std::span<const std::string> states)
{
    StateSet out(scope);
    for (const auto& str : states)
        out.insert(State::parse(str, scope).code());
    return out;
}

std::size_t StateSet::size() const
{
    std::size_t n = 0;
    for (auto w : words_)
        n += static_cast<std::size_t>(std::popcount(w));
    return n;
}

bool StateSet::empty() const
{
    return std::all_of(words_.begin(), words_.end(), [](auto w) { return w == 0; });
}

std::vector<StateCode> StateSet::codes() const
{
    std::vector<StateCode> out;
    for_each([&](StateCode s) { out.push_back(s); });
    return out;
}

std::vector<std::string> StateSet::strings() const
{
    std::vector<std::string> out;
    for_each([&](StateCode s) { out.push_back(code_to_string(s, width())); });
    std::sort(out.begin(), out.end());
    return out;
}

void StateSet::check_same_scope(const StateSet& other) const
{
    if (scope_ != other.scope_)
        throw std::invalid_argument("state sets over different scopes");
}

bool StateSet::is_subset_of(const StateSet& other) const
{
    check_same_scope(other);
    for (std::size_t w = 0; w < words_.size(); ++w)
        if ((words_[w] & ~other.words_[w]) != 0)
            return false;
    return true;
}

bool StateSet::intersects(const StateSet& other) const
{
    check_same_scope(other);
    for (std::size_t w = 0; w < words_.size(); ++w)
        if ((words_[w] & other.words_[w]) != 0)
            return true;
    return false;
}

StateSet& StateSet::operator|=(const StateSet& other)
{
    check_same_scope(other);
    for (std::size_t w = 0; w < words_.size(); ++w)
        words_[w] |= other.words_[w];
    return *this;
}

StateSet& StateSet::operator&=(const StateSet& other)
{
    check_same_scope(other);
    for (std::size_t w = 0; w < words_.size(); ++w)
        words_[w] &= other.words_[w];
    return *this;
}

State project(const State& s, VarMask to)
{
    if ((to & ~s.scope()) != 0)
        throw std::invalid_argument("projection target is not a subset of the state's scope");
    return State(to, project_code(s.code(), s.scope(), to));
}

StateSet project(const StateSet& states, VarMask to)
{
    if ((to & ~states.scope()) != 0)
        throw std::invalid_argument("projection target is not a subset of the set's scope");
    StateSet out(to);
    states.for_each([&](StateCode s) { out.insert(project_code(s, states.scope(), to)); });
    return out;
}

std::optional<State> cross(const State& a, const State& b)
{
    const VarMask shared = a.scope() & b.scope();
    const StateCode ga = deposit(a.code(), a.scope());
    const StateCode gb = deposit(b.code(), b.scope());
    if (((ga ^ gb) & shared) != 0)
        return std::nullopt;
    const VarMask joint = a.scope() | b.scope();
    return State(joint, extract(ga | gb, joint));
}

StateSet cross(const StateSet& a, const StateSet& b)
{
    const VarMask joint = a.scope() | b.scope();
    const VarMask free = b.scope() & ~a.scope();
    const StateCode free_count = StateCode{1} << width_of(free);
    StateSet out(joint);
    a.for_each([&](StateCode sa) {
        const StateCode base = deposit(sa, a.scope());
        for (StateCode t = 0; t < free_count; ++t) {
            const StateCode g = base | deposit(t, free);
            if (b.contains(extract(g, b.scope())))
                out.insert(extract(g, joint));
        }
    });
    return out;
}

StateSet cross(std::span<const StateSet> sets)
{
    if (sets.empty())
        throw std::invalid_argument("cross of an empty list");
    StateSet acc = sets.front();
    for (std::size_t i = 1; i < sets.size(); ++i)
        acc = cross(acc, sets[i]);
    return acc;
}

StateSet cylinder(const StateSet& states, VarMask to)
{
    if ((states.scope() & ~to) != 0)
        throw std::invalid_argument("cylinder target must contain the set's scope");
    return cross(states, StateSet::full(to & ~states.scope()));
}

}  // namespace bnctl
