#pragma once

#include "bnctl/state.hpp"

#include <filesystem>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace bnctl {

/// Expression tree over variables, constants, negation, conjunction and disjunction.
class BoolExpr {
public:
    enum class Kind { Constant, Variable, Not, And, Or };

    static BoolExpr constant(bool value);
    /// `index` is the 0-based variable index.
    static BoolExpr variable(unsigned index);
    static BoolExpr negation(BoolExpr operand);
    static BoolExpr conjunction(std::vector<BoolExpr> operands);
    static BoolExpr disjunction(std::vector<BoolExpr> operands);

    Kind kind() const { return kind_; }
    bool constant_value() const { return value_ != 0; }
    unsigned variable_index() const { return value_; }
    const std::vector<BoolExpr>& operands() const { return operands_; }

    /// Evaluates against a global state code (bit i = variable i).
    bool eval(StateCode global) const;

    VarMask syntactic_support() const;

    bool operator==(const BoolExpr&) const = default;

private:
    BoolExpr(Kind kind, unsigned value, std::vector<BoolExpr> operands);

    Kind kind_ = Kind::Constant;
    unsigned value_ = 0;
    std::vector<BoolExpr> operands_;
};

/// Evaluates `expr` on a state whose scope covers the expression's variables.
bool eval(const BoolExpr& expr, const State& s);

class SupportTooLarge : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

inline constexpr unsigned kMaxSupportEnumeration = 20;

/// Variables x_j such that some pair of assignments differing only in x_j
/// gives different values. Enumerates the syntactic support only.
VarMask semantic_support(const BoolExpr& f, unsigned n);

/// Canonical text of an expression; nested same-kind operators keep their parentheses.
std::string to_string(const BoolExpr& expr, std::span<const std::string> names);

enum class DependencyMode { Semantic, Syntactic };

class ParseError : public std::runtime_error {
public:
    ParseError(std::size_t line, std::size_t column, const std::string& message);

    std::size_t line() const { return line_; }
    std::size_t column() const { return column_; }

private:
    std::size_t line_;
    std::size_t column_;
};

struct ParseOptions {
    unsigned max_variables = kMaxVariables;
    DependencyMode dependency = DependencyMode::Semantic;
};

/// Immutable Boolean network: ordered variables, one update function each,
/// and the derived influence graph.
class BooleanNetwork {
public:
    BooleanNetwork(std::vector<std::string> names,
                   std::vector<BoolExpr> functions,
                   DependencyMode dependency = DependencyMode::Semantic);

    unsigned size() const { return static_cast<unsigned>(names_.size()); }
    VarMask variables() const { return full_mask(size()); }

    const std::vector<std::string>& names() const { return names_; }
    const std::string& name(unsigned i) const { return names_.at(i); }
    const BoolExpr& function(unsigned i) const { return functions_.at(i); }

    /// Regulators of variable i (sources of influence edges into i).
    VarMask parents(unsigned i) const { return parents_.at(i); }

    /// Union of the parents of every variable in `vars`.
    VarMask parents_of(VarMask vars) const;

    /// Influence edges (j, i), 0-based, meaning f_i depends on x_j.
    std::vector<std::pair<unsigned, unsigned>> influence_edges() const;

    /// f_i at a global state, through a table compiled over the support of f_i.
    bool update(unsigned i, StateCode global) const
    {
        const auto& t = tables_[i];
        const StateCode row = extract(global, parents_[i]);
        return (t[row >> 6] >> (row & 63)) & 1u;
    }

    /// True when f_i depends only on variables inside `scope` for every i in `scope`.
    bool is_closed(VarMask scope) const;

    bool operator==(const BooleanNetwork& other) const
    {
        return names_ == other.names_ && functions_ == other.functions_;
    }

private:
    std::vector<std::string> names_;
    std::vector<BoolExpr> functions_;
    std::vector<VarMask> parents_;
    std::vector<std::vector<std::uint64_t>> tables_;
};

BooleanNetwork parse_network(std::string_view text, const ParseOptions& options = {});
BooleanNetwork load_network(const std::filesystem::path& path, const ParseOptions& options = {});

/// One `NAME = EXPR` line per variable, in index order.
std::string serialize(const BooleanNetwork& bn);

}  // namespace bnctl
