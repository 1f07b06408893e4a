#include "hyperboot/subcube.hpp"

#include "hyperboot/errors.hpp"

#include <algorithm>
#include <cctype>

namespace hyperboot {

namespace {

bool is_ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool is_ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\''; }

class Parser {
public:
    explicit Parser(std::string_view text) : text_(text) {}

    SubcubeExpr parse()
    {
        SubcubeExpr e = expr();
        skip_ws();
        if (!at_end()) fail("unexpected '" + std::string(1, peek()) + "'");
        return e;
    }

private:
    std::string_view text_;
    std::size_t pos_ = 0;

    [[noreturn]] void fail(const std::string& what) const { throw ParseError(pos_, what); }

    void skip_ws()
    {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }
    bool at_end() const { return pos_ >= text_.size(); }
    char peek() const { return at_end() ? '\0' : text_[pos_]; }

    bool accept(char c)
    {
        skip_ws();
        if (peek() == c) {
            ++pos_;
            return true;
        }
        return false;
    }
    void expect(char c)
    {
        if (!accept(c)) {
            if (at_end()) fail(std::string("expected '") + c + "' but input ended");
            fail(std::string("expected '") + c + "', found '" + peek() + "'");
        }
    }

    bool starts_factor()
    {
        skip_ws();
        const char c = peek();
        return c == '[' || c == '~' || c == '(' || is_ident_start(c);
    }

    SubcubeExpr expr()
    {
        std::vector<SubcubeExpr> alts;
        alts.push_back(concat());
        while (accept('|')) alts.push_back(concat());
        if (alts.size() == 1) return std::move(alts.front());
        SubcubeExpr e;
        e.kind = SubcubeExpr::Kind::Union;
        e.children = std::move(alts);
        return e;
    }

    std::vector<SubcubeExpr> factor_list()
    {
        std::vector<SubcubeExpr> factors;
        if (!starts_factor()) {
            if (at_end()) fail("expected a factor but input ended");
            fail("expected a factor, found '" + std::string(1, peek()) + "'");
        }
        while (starts_factor()) factors.push_back(factor());
        return factors;
    }

    SubcubeExpr concat()
    {
        std::vector<SubcubeExpr> factors = factor_list();
        if (factors.size() == 1) return std::move(factors.front());
        SubcubeExpr e;
        e.kind = SubcubeExpr::Kind::Concat;
        e.children = std::move(factors);
        return e;
    }

    SubcubeExpr factor()
    {
        SubcubeExpr base = atom();
        if (!accept('^')) return base;
        SubcubeExpr e;
        e.kind = SubcubeExpr::Kind::Power;
        e.exponent = exponent();
        e.children.push_back(std::move(base));
        return e;
    }

    SubcubeExpr atom()
    {
        skip_ws();
        const char c = peek();
        if (c == '[') return block();
        if (c == '~') {
            ++pos_;
            expect('(');
            SubcubeExpr e;
            e.kind = SubcubeExpr::Kind::Perm;
            e.children = factor_list();
            expect(')');
            return e;
        }
        if (c == '(') {
            ++pos_;
            SubcubeExpr e = expr();
            expect(')');
            return e;
        }
        SubcubeExpr e;
        e.kind = SubcubeExpr::Kind::NameRef;
        e.name = identifier();
        return e;
    }

    SubcubeExpr block()
    {
        expect('[');
        SubcubeExpr e;
        e.kind = SubcubeExpr::Kind::Block;
        do {
            skip_ws();
            const char c = peek();
            if (c != '0' && c != '1' && c != '*') {
                if (at_end()) fail("expected a symbol 0, 1 or * but input ended");
                fail("invalid block symbol '" + std::string(1, c) + "' (expected 0, 1 or *)");
            }
            e.block.push_back(static_cast<Symbol>(c));
            ++pos_;
        } while (accept(','));
        expect(']');
        return e;
    }

    std::string identifier()
    {
        skip_ws();
        if (!is_ident_start(peek())) fail("expected an identifier");
        const std::size_t start = pos_;
        while (!at_end() && is_ident_char(peek())) ++pos_;
        return std::string(text_.substr(start, pos_ - start));
    }

    IntExpr integer()
    {
        skip_ws();
        if (!std::isdigit(static_cast<unsigned char>(peek()))) fail("expected an integer");
        IntExpr e;
        while (std::isdigit(static_cast<unsigned char>(peek()))) {
            if (e.value > (INT64_MAX - 9) / 10) fail("integer literal too large");
            e.value = e.value * 10 + (peek() - '0');
            ++pos_;
        }
        return e;
    }

    IntExpr exponent()
    {
        skip_ws();
        const char c = peek();
        if (std::isdigit(static_cast<unsigned char>(c))) return integer();
        if (c == '(') {
            ++pos_;
            IntExpr e = arith();
            expect(')');
            return e;
        }
        if (is_ident_start(c)) {
            IntExpr e;
            e.kind = IntExpr::Kind::Variable;
            e.name = identifier();
            return e;
        }
        fail("expected an exponent (integer, name or parenthesised expression)");
    }

    static IntExpr binary(IntExpr::Kind kind, IntExpr lhs, IntExpr rhs)
    {
        IntExpr e;
        e.kind = kind;
        e.operands.push_back(std::move(lhs));
        e.operands.push_back(std::move(rhs));
        return e;
    }

    IntExpr arith()
    {
        IntExpr lhs = term();
        for (;;) {
            if (accept('+'))
                lhs = binary(IntExpr::Kind::Add, std::move(lhs), term());
            else if (accept('-'))
                lhs = binary(IntExpr::Kind::Sub, std::move(lhs), term());
            else
                return lhs;
        }
    }

    IntExpr term()
    {
        IntExpr lhs = unary();
        for (;;) {
            if (accept('*'))
                lhs = binary(IntExpr::Kind::Mul, std::move(lhs), unary());
            else if (accept('/'))
                lhs = binary(IntExpr::Kind::Div, std::move(lhs), unary());
            else
                return lhs;
        }
    }

    IntExpr unary()
    {
        if (accept('-')) {
            IntExpr e;
            e.kind = IntExpr::Kind::Neg;
            e.operands.push_back(unary());
            return e;
        }
        return exponent();
    }
};

std::int64_t checked(__int128 v)
{
    if (v > INT64_MAX || v < INT64_MIN) throw EvalError("integer overflow in exponent");
    return static_cast<std::int64_t>(v);
}

std::int64_t eval_exponent(const IntExpr& e, const Env& env)
{
    const std::int64_t k = eval_int(e, env);
    if (k < 0) throw EvalError("negative exponent " + std::to_string(k) + " in " + to_string(e));
    return k;
}

void check_size(std::size_t n)
{
    if (n > kMaxSetElements)
        throw EvalError("expression expands to more than " + std::to_string(kMaxSetElements) + " words");
}

WordSet concat(const WordSet& a, const WordSet& b)
{
    const int dim = a.dim() + b.dim();
    if (dim > kMaxVertexDim) throw EvalError("concatenation exceeds 63 coordinates");
    check_size(a.size() * b.size());
    std::vector<Word> out;
    out.reserve(a.size() * b.size());
    for (Word x : a)
        for (Word y : b) out.push_back(x | (y << a.dim()));
    return WordSet(dim, std::move(out));
}

WordSet unit_set() { return WordSet(0, {0}); }

WordSet eval_block(const std::vector<Symbol>& syms)
{
    if (syms.size() > static_cast<std::size_t>(kMaxVertexDim)) throw EvalError("block longer than 63 symbols");
    const int dim = static_cast<int>(syms.size());
    Word fixed = 0;
    std::vector<int> free;
    for (int i = 0; i < dim; ++i) {
        switch (syms[static_cast<std::size_t>(i)]) {
        case Symbol::One: fixed |= Word{1} << i; break;
        case Symbol::Any: free.push_back(i); break;
        case Symbol::Zero: break;
        }
    }
    if (free.size() >= 63) throw EvalError("block has too many free coordinates");
    const std::size_t count = std::size_t{1} << free.size();
    check_size(count);
    std::vector<Word> out;
    out.reserve(count);
    for (std::size_t m = 0; m < count; ++m) {
        Word w = fixed;
        for (std::size_t j = 0; j < free.size(); ++j)
            if ((m >> j) & 1U) w |= Word{1} << free[j];
        out.push_back(w);
    }
    return WordSet(dim, std::move(out));
}

WordSet eval_perm(const SubcubeExpr& e, const Env& env)
{
    // Expand powers into repeated factors, then identify equal factors so that
    // only distinct orderings of the multiset are visited.
    std::vector<WordSet> distinct;
    std::vector<std::size_t> ids;
    auto add_factor = [&](WordSet s, std::int64_t copies) {
        auto it = std::find(distinct.begin(), distinct.end(), s);
        std::size_t id = static_cast<std::size_t>(it - distinct.begin());
        if (it == distinct.end()) {
            distinct.push_back(std::move(s));
            if (distinct.size() > kMaxPermDistinctFactors)
                throw EvalError("permutation has more than " + std::to_string(kMaxPermDistinctFactors) +
                                " distinct factors");
        }
        for (std::int64_t c = 0; c < copies; ++c) ids.push_back(id);
    };
    for (const SubcubeExpr& f : e.children) {
        if (f.kind == SubcubeExpr::Kind::Power) {
            const std::int64_t k = eval_exponent(f.exponent, env);
            if (k > kMaxVertexDim) throw EvalError("exponent " + std::to_string(k) + " too large");
            if (k > 0) add_factor(eval_subcube(f.children.front(), env), k);
        } else {
            add_factor(eval_subcube(f, env), 1);
        }
    }
    int dim = 0;
    for (std::size_t id : ids) dim += distinct[id].dim();
    if (dim > kMaxVertexDim) throw EvalError("permutation exceeds 63 coordinates");

    std::sort(ids.begin(), ids.end());
    std::vector<Word> out;
    do {
        WordSet acc = unit_set();
        for (std::size_t id : ids) acc = concat(acc, distinct[id]);
        out.insert(out.end(), acc.begin(), acc.end());
        check_size(out.size());
    } while (std::next_permutation(ids.begin(), ids.end()));
    return WordSet(dim, std::move(out));
}

}  // namespace

SubcubeExpr parse_subcube(std::string_view text) { return Parser(text).parse(); }

std::int64_t eval_int(const IntExpr& e, const Env& env)
{
    using K = IntExpr::Kind;
    switch (e.kind) {
    case K::Literal: return e.value;
    case K::Variable: {
        auto it = env.ints.find(e.name);
        if (it == env.ints.end()) throw EvalError("unbound integer '" + e.name + "'");
        return it->second;
    }
    case K::Neg: return checked(-static_cast<__int128>(eval_int(e.operands[0], env)));
    default: break;
    }
    const __int128 a = eval_int(e.operands[0], env);
    const __int128 b = eval_int(e.operands[1], env);
    switch (e.kind) {
    case K::Add: return checked(a + b);
    case K::Sub: return checked(a - b);
    case K::Mul: return checked(a * b);
    case K::Div:
        if (b == 0) throw EvalError("division by zero in " + to_string(e));
        if (a % b != 0) throw EvalError("inexact division in " + to_string(e));
        return checked(a / b);
    default: throw EvalError("malformed integer expression");
    }
}

WordSet eval_subcube(const SubcubeExpr& e, const Env& env)
{
    using K = SubcubeExpr::Kind;
    switch (e.kind) {
    case K::Block: return eval_block(e.block);
    case K::Concat: {
        WordSet acc = unit_set();
        for (const SubcubeExpr& f : e.children) acc = concat(acc, eval_subcube(f, env));
        return acc;
    }
    case K::Power: {
        const std::int64_t k = eval_exponent(e.exponent, env);
        if (k > kMaxVertexDim) {
            // Only a zero-dimensional base can be raised this far.
            WordSet base = eval_subcube(e.children.front(), env);
            if (base.dim() != 0) throw EvalError("exponent " + std::to_string(k) + " too large");
            return base.empty() ? base : unit_set();
        }
        WordSet base = eval_subcube(e.children.front(), env);
        WordSet acc = unit_set();
        for (std::int64_t i = 0; i < k; ++i) acc = concat(acc, base);
        return acc;
    }
    case K::Perm: return eval_perm(e, env);
    case K::Union: {
        WordSet acc = eval_subcube(e.children.front(), env);
        for (std::size_t i = 1; i < e.children.size(); ++i) {
            WordSet next = eval_subcube(e.children[i], env);
            if (next.dim() != acc.dim())
                throw EvalError("union of sets with dimensions " + std::to_string(acc.dim()) + " and " +
                                std::to_string(next.dim()));
            acc = set_union(acc, next);
        }
        return acc;
    }
    case K::NameRef: {
        auto it = env.sets.find(e.name);
        if (it == env.sets.end()) throw EvalError("unbound set '" + e.name + "'");
        return it->second;
    }
    }
    throw EvalError("malformed expression");
}

std::string to_string(const IntExpr& e)
{
    using K = IntExpr::Kind;
    switch (e.kind) {
    case K::Literal: return std::to_string(e.value);
    case K::Variable: return e.name;
    case K::Neg: return "-" + to_string(e.operands[0]);
    case K::Add: return "(" + to_string(e.operands[0]) + "+" + to_string(e.operands[1]) + ")";
    case K::Sub: return "(" + to_string(e.operands[0]) + "-" + to_string(e.operands[1]) + ")";
    case K::Mul: return "(" + to_string(e.operands[0]) + "*" + to_string(e.operands[1]) + ")";
    case K::Div: return "(" + to_string(e.operands[0]) + "/" + to_string(e.operands[1]) + ")";
    }
    return "?";
}

std::string to_string(const SubcubeExpr& e)
{
    using K = SubcubeExpr::Kind;
    auto list = [](const std::vector<SubcubeExpr>& xs) {
        std::string s;
        for (std::size_t i = 0; i < xs.size(); ++i) {
            if (i) s += ',';
            s += to_string(xs[i]);
        }
        return s;
    };
    switch (e.kind) {
    case K::Block: {
        std::string s = "Block[";
        for (std::size_t i = 0; i < e.block.size(); ++i) {
            if (i) s += ',';
            s += static_cast<char>(e.block[i]);
        }
        return s + "]";
    }
    case K::Concat: return "Concat(" + list(e.children) + ")";
    case K::Power: return "Power(" + to_string(e.children.front()) + "," + to_string(e.exponent) + ")";
    case K::Perm: return "Perm(" + list(e.children) + ")";
    case K::Union: return "Union(" + list(e.children) + ")";
    case K::NameRef: return "Name(" + e.name + ")";
    }
    return "?";
}

}  // namespace hyperboot
