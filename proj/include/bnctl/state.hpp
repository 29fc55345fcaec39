#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace bnctl {

/// Set of variables, bit i standing for the variable with 0-based index i.
using VarMask = std::uint32_t;

/// A state local to some scope: bit k holds the value of the k-th lowest
/// variable of that scope.
using StateCode = std::uint32_t;

inline constexpr unsigned kMaxVariables = 24;
inline constexpr std::size_t kDefaultStateCap = std::size_t{1} << 24;

/// Raised when an explicit state space would exceed the configured cap.
class CapacityError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

inline unsigned width_of(VarMask scope) { return static_cast<unsigned>(std::popcount(scope)); }

VarMask full_mask(unsigned n);

/// 1-based ascending variable indices of a mask.
std::vector<unsigned> mask_to_indices(VarMask mask);

/// Inverse of mask_to_indices; throws std::out_of_range for indices outside 1..kMaxVariables.
VarMask indices_to_mask(std::span<const unsigned> one_based);
VarMask indices_to_mask(std::initializer_list<unsigned> one_based);

/// Scatter a scope-local code to global bit positions.
StateCode deposit(StateCode local, VarMask scope);

/// Gather the bits of `scope` from a global code into a scope-local code.
StateCode extract(StateCode global, VarMask scope);

inline StateCode project_code(StateCode code, VarMask from, VarMask to)
{
    return extract(deposit(code, from), to);
}

/// Sort key that orders codes like their printed strings (variable 1 leftmost).
StateCode lex_key(StateCode code, unsigned width);

std::string code_to_string(StateCode code, unsigned width);

/// A valuation of the variables of one scope.
class State {
public:
    State() = default;
    State(VarMask scope, StateCode code);

    /// Parses a 0/1 string whose k-th character is the k-th variable of `scope`.
    static State parse(std::string_view bits, VarMask scope);

    VarMask scope() const { return scope_; }
    StateCode code() const { return code_; }
    unsigned width() const { return width_of(scope_); }

    /// Value of the variable with global 0-based index `var`, which must lie in the scope.
    bool value(unsigned var) const;

    std::string to_string() const { return code_to_string(code_, width()); }

    bool operator==(const State&) const = default;

private:
    VarMask scope_ = 0;
    StateCode code_ = 0;
};

/// Dense membership set over all 2^|scope| states of a scope.
class StateSet {
public:
    StateSet() = default;
    explicit StateSet(VarMask scope);

    static StateSet full(VarMask scope);
    static StateSet from_strings(VarMask scope, std::initializer_list<std::string_view> states);
    static StateSet from_strings(VarMask scope, std::span<const std::string> states);

    VarMask scope() const { return scope_; }
    unsigned width() const { return width_of(scope_); }
    std::size_t capacity() const { return std::size_t{1} << width(); }

    bool contains(StateCode s) const { return (words_[s >> 6] >> (s & 63)) & 1u; }
    void insert(StateCode s) { words_[s >> 6] |= std::uint64_t{1} << (s & 63); }
    void erase(StateCode s) { words_[s >> 6] &= ~(std::uint64_t{1} << (s & 63)); }

    std::size_t size() const;
    bool empty() const;

    template <class Fn>
    void for_each(Fn&& fn) const
    {
        for (std::size_t w = 0; w < words_.size(); ++w) {
            std::uint64_t bits = words_[w];
            while (bits != 0) {
                const auto bit = static_cast<unsigned>(std::countr_zero(bits));
                fn(static_cast<StateCode>((w << 6) | bit));
                bits &= bits - 1;
            }
        }
    }

    std::vector<StateCode> codes() const;

    /// Members as strings in lexicographic order.
    std::vector<std::string> strings() const;

    bool is_subset_of(const StateSet& other) const;
    bool intersects(const StateSet& other) const;

    StateSet& operator|=(const StateSet& other);
    StateSet& operator&=(const StateSet& other);

    const std::vector<std::uint64_t>& words() const { return words_; }

    bool operator==(const StateSet&) const = default;

private:
    void check_same_scope(const StateSet& other) const;

    VarMask scope_ = 0;
    std::vector<std::uint64_t> words_ = std::vector<std::uint64_t>(1, 0);
};

/// s|_to; `to` must be a subset of s's scope.
State project(const State& s, VarMask to);
StateSet project(const StateSet& states, VarMask to);

/// The unique state over the union of both scopes agreeing with both, if any.
std::optional<State> cross(const State& a, const State& b);

/// All crossable combinations of members of `a` and `b`.
StateSet cross(const StateSet& a, const StateSet& b);

/// Left-associative cross of a nonempty list of sets.
StateSet cross(std::span<const StateSet> sets);

/// Embeds a set into a larger scope, leaving the added variables unconstrained.
StateSet cylinder(const StateSet& states, VarMask to);

}  // namespace bnctl
