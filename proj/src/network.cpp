#include "bnctl/network.hpp"

#include <cctype>
#include <fstream>
#include <sstream>
#include <unordered_map>

namespace bnctl {

BoolExpr::BoolExpr(Kind kind, unsigned value, std::vector<BoolExpr> operands)
    : kind_(kind)
    , value_(value)
    , operands_(std::move(operands))
{
}

BoolExpr BoolExpr::constant(bool value) { return BoolExpr(Kind::Constant, value ? 1u : 0u, {}); }

BoolExpr BoolExpr::variable(unsigned index)
{
    if (index >= kMaxVariables)
        throw std::out_of_range("variable index out of range");
    return BoolExpr(Kind::Variable, index, {});
}

BoolExpr BoolExpr::negation(BoolExpr operand)
{
    std::vector<BoolExpr> ops;
    ops.push_back(std::move(operand));
    return BoolExpr(Kind::Not, 0, std::move(ops));
}

BoolExpr BoolExpr::conjunction(std::vector<BoolExpr> operands)
{
    if (operands.size() < 2)
        throw std::invalid_argument("conjunction needs at least two operands");
    return BoolExpr(Kind::And, 0, std::move(operands));
}

BoolExpr BoolExpr::disjunction(std::vector<BoolExpr> operands)
{
    if (operands.size() < 2)
        throw std::invalid_argument("disjunction needs at least two operands");
    return BoolExpr(Kind::Or, 0, std::move(operands));
}

bool BoolExpr::eval(StateCode global) const
{
    switch (kind_) {
    case Kind::Constant:
        return value_ != 0;
    case Kind::Variable:
        return (global >> value_) & 1u;
    case Kind::Not:
        return !operands_.front().eval(global);
    case Kind::And:
        for (const auto& op : operands_)
            if (!op.eval(global))
                return false;
        return true;
    case Kind::Or:
        for (const auto& op : operands_)
            if (op.eval(global))
                return true;
        return false;
    }
    return false;
}

VarMask BoolExpr::syntactic_support() const
{
    if (kind_ == Kind::Variable)
        return VarMask{1} << value_;
    VarMask m = 0;
    for (const auto& op : operands_)
        m |= op.syntactic_support();
    return m;
}

bool eval(const BoolExpr& expr, const State& s)
{
    if ((expr.syntactic_support() & ~s.scope()) != 0)
        throw std::invalid_argument("expression refers to variables outside the state's scope");
    return expr.eval(deposit(s.code(), s.scope()));
}

VarMask semantic_support(const BoolExpr& f, unsigned n)
{
    const VarMask syntactic = f.syntactic_support();
    if (n < kMaxVariables && (syntactic & ~full_mask(n)) != 0)
        throw std::invalid_argument("expression refers to a variable beyond n");
    const unsigned k = width_of(syntactic);
    if (k > kMaxSupportEnumeration)
        throw SupportTooLarge("support too large: " + std::to_string(k) + " variables");

    const StateCode rows = StateCode{1} << k;
    std::vector<bool> table(rows);
    for (StateCode r = 0; r < rows; ++r)
        table[r] = f.eval(deposit(r, syntactic));

    VarMask support = 0;
    for (unsigned pos = 0; pos < k; ++pos) {
        const StateCode bit = StateCode{1} << pos;
        for (StateCode r = 0; r < rows; ++r) {
            if ((r & bit) == 0 && table[r] != table[r | bit]) {
                support |= deposit(bit, syntactic);
                break;
            }
        }
    }
    return support;
}

namespace {

int precedence(BoolExpr::Kind kind)
{
    switch (kind) {
    case BoolExpr::Kind::Or:
        return 0;
    case BoolExpr::Kind::And:
        return 1;
    case BoolExpr::Kind::Not:
        return 2;
    default:
        return 3;
    }
}

void print(const BoolExpr& e, std::span<const std::string> names, std::string& out)
{
    using Kind = BoolExpr::Kind;
    auto child = [&](const BoolExpr& c, bool paren) {
        if (paren)
            out += '(';
        print(c, names, out);
        if (paren)
            out += ')';
    };
    switch (e.kind()) {
    case Kind::Constant:
        out += e.constant_value() ? '1' : '0';
        break;
    case Kind::Variable:
        out += names[e.variable_index()];
        break;
    case Kind::Not:
        out += '!';
        child(e.operands().front(), precedence(e.operands().front().kind()) < precedence(Kind::Not));
        break;
    case Kind::And:
    case Kind::Or: {
        const char* sep = e.kind() == Kind::And ? " & " : " | ";
        bool first = true;
        for (const auto& op : e.operands()) {
            if (!first)
                out += sep;
            first = false;
            child(op, precedence(op.kind()) <= precedence(e.kind()));
        }
        break;
    }
    }
}

class ExprParser {
public:
    ExprParser(std::string_view text, std::size_t line, std::size_t column_offset,
               const std::unordered_map<std::string, unsigned>& index)
        : text_(text)
        , line_(line)
        , offset_(column_offset)
        , index_(index)
    {
    }

    BoolExpr parse()
    {
        BoolExpr e = parse_or();
        skip_space();
        if (pos_ != text_.size())
            fail("unexpected '" + std::string(1, text_[pos_]) + "'");
        return e;
    }

private:
    [[noreturn]] void fail(const std::string& message) const
    {
        throw ParseError(line_, offset_ + pos_ + 1, message);
    }

    void skip_space()
    {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_])))
            ++pos_;
    }

    bool accept(char c)
    {
        skip_space();
        if (pos_ < text_.size() && text_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    BoolExpr parse_or()
    {
        std::vector<BoolExpr> ops;
        ops.push_back(parse_and());
        while (accept('|'))
            ops.push_back(parse_and());
        return ops.size() == 1 ? std::move(ops.front()) : BoolExpr::disjunction(std::move(ops));
    }

    BoolExpr parse_and()
    {
        std::vector<BoolExpr> ops;
        ops.push_back(parse_not());
        while (accept('&'))
            ops.push_back(parse_not());
        return ops.size() == 1 ? std::move(ops.front()) : BoolExpr::conjunction(std::move(ops));
    }

    BoolExpr parse_not()
    {
        if (accept('!'))
            return BoolExpr::negation(parse_not());
        return parse_atom();
    }

    BoolExpr parse_atom()
    {
        skip_space();
        if (pos_ >= text_.size())
            fail("expected an operand");
        const char c = text_[pos_];
        if (c == '(') {
            ++pos_;
            BoolExpr e = parse_or();
            if (!accept(')'))
                fail("expected ')'");
            return e;
        }
        if (c == '0' || c == '1') {
            ++pos_;
            if (pos_ < text_.size() && is_name_char(text_[pos_]))
                fail("malformed constant");
            return BoolExpr::constant(c == '1');
        }
        if (is_name_start(c)) {
            const std::size_t start = pos_;
            while (pos_ < text_.size() && is_name_char(text_[pos_]))
                ++pos_;
            const std::string name(text_.substr(start, pos_ - start));
            const auto it = index_.find(name);
            if (it == index_.end()) {
                pos_ = start;
                fail("undeclared variable '" + name + "'");
            }
            return BoolExpr::variable(it->second);
        }
        fail("unexpected '" + std::string(1, c) + "'");
    }

public:
    static bool is_name_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
    static bool is_name_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }

private:
    std::string_view text_;
    std::size_t pos_ = 0;
    std::size_t line_;
    std::size_t offset_;
    const std::unordered_map<std::string, unsigned>& index_;
};

struct RawLine {
    std::size_t line;
    std::string name;
    std::string_view expr;
    std::size_t expr_column;
};

}  // namespace

std::string to_string(const BoolExpr& expr, std::span<const std::string> names)
{
    std::string out;
    print(expr, names, out);
    return out;
}

ParseError::ParseError(std::size_t line, std::size_t column, const std::string& message)
    : std::runtime_error("line " + std::to_string(line) + ", column " + std::to_string(column) +
                         ": " + message)
    , line_(line)
    , column_(column)
{
}

BooleanNetwork::BooleanNetwork(std::vector<std::string> names,
                               std::vector<BoolExpr> functions,
                               DependencyMode dependency)
    : names_(std::move(names))
    , functions_(std::move(functions))
{
    const auto n = static_cast<unsigned>(names_.size());
    if (n == 0)
        throw std::invalid_argument("a network needs at least one variable");
    if (n > kMaxVariables)
        throw std::invalid_argument("network exceeds " + std::to_string(kMaxVariables) + " variables");
    if (functions_.size() != n)
        throw std::invalid_argument("one update function per variable is required");

    parents_.resize(n);
    tables_.resize(n);
    for (unsigned i = 0; i < n; ++i) {
        if ((functions_[i].syntactic_support() & ~full_mask(n)) != 0)
            throw std::invalid_argument("function of '" + names_[i] + "' refers to an unknown variable");
        parents_[i] = dependency == DependencyMode::Semantic ? semantic_support(functions_[i], n)
                                                             : functions_[i].syntactic_support();
        const StateCode rows = StateCode{1} << width_of(parents_[i]);
        auto& table = tables_[i];
        table.assign(std::max<std::size_t>(1, rows / 64), 0);
        for (StateCode r = 0; r < rows; ++r)
            if (functions_[i].eval(deposit(r, parents_[i])))
                table[r >> 6] |= std::uint64_t{1} << (r & 63);
    }
}

VarMask BooleanNetwork::parents_of(VarMask vars) const
{
    VarMask out = 0;
    for (unsigned i : mask_to_indices(vars))
        out |= parents_.at(i - 1);
    return out;
}

std::vector<std::pair<unsigned, unsigned>> BooleanNetwork::influence_edges() const
{
    std::vector<std::pair<unsigned, unsigned>> edges;
    for (unsigned i = 0; i < size(); ++i)
        for (unsigned j1 : mask_to_indices(parents_[i]))
            edges.emplace_back(j1 - 1, i);
    return edges;
}

bool BooleanNetwork::is_closed(VarMask scope) const
{
    return (parents_of(scope) & ~scope) == 0;
}

BooleanNetwork parse_network(std::string_view text, const ParseOptions& options)
{
    std::vector<RawLine> lines;
    std::unordered_map<std::string, unsigned> index;

    std::size_t line_no = 0;
    std::size_t start = 0;
    while (start <= text.size()) {
        std::size_t end = text.find('\n', start);
        if (end == std::string_view::npos)
            end = text.size();
        std::string_view line = text.substr(start, end - start);
        ++line_no;
        start = end + 1;

        if (const auto hash = line.find('#'); hash != std::string_view::npos)
            line = line.substr(0, hash);
        if (!line.empty() && line.back() == '\r')
            line.remove_suffix(1);

        std::size_t p = 0;
        while (p < line.size() && std::isspace(static_cast<unsigned char>(line[p])))
            ++p;
        if (p == line.size())
            continue;

        if (!ExprParser::is_name_start(line[p]))
            throw ParseError(line_no, p + 1, "expected a variable name");
        const std::size_t name_start = p;
        while (p < line.size() && ExprParser::is_name_char(line[p]))
            ++p;
        std::string name(line.substr(name_start, p - name_start));
        while (p < line.size() && std::isspace(static_cast<unsigned char>(line[p])))
            ++p;
        if (p >= line.size() || line[p] != '=')
            throw ParseError(line_no, p + 1, "expected '='");
        ++p;

        if (index.count(name))
            throw ParseError(line_no, name_start + 1, "duplicate variable '" + name + "'");
        if (index.size() >= options.max_variables)
            throw ParseError(line_no, name_start + 1,
                             "more than " + std::to_string(options.max_variables) + " variables");
        index.emplace(name, static_cast<unsigned>(lines.size()));
        lines.push_back(RawLine{line_no, std::move(name), line.substr(p), p});
        if (start > text.size())
            break;
    }
    if (lines.empty())
        throw ParseError(line_no, 1, "no variables declared");

    std::vector<std::string> names;
    std::vector<BoolExpr> functions;
    for (const auto& raw : lines) {
        names.push_back(raw.name);
        functions.push_back(ExprParser(raw.expr, raw.line, raw.expr_column, index).parse());
    }
    return BooleanNetwork(std::move(names), std::move(functions), options.dependency);
}

BooleanNetwork load_network(const std::filesystem::path& path, const ParseOptions& options)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw std::runtime_error("cannot open '" + path.string() + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_network(buf.str(), options);
}

std::string serialize(const BooleanNetwork& bn)
{
    std::string out;
    for (unsigned i = 0; i < bn.size(); ++i) {
        out += bn.name(i);
        out += " = ";
        out += to_string(bn.function(i), bn.names());
        out += '\n';
    }
    return out;
}

}  // namespace bnctl
