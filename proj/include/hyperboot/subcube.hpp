#pragma once

// Subcube pattern expressions.
//
//   expr   := concat ('|' concat)*
//   concat := factor+
//   factor := atom ('^' exponent)?
//   atom   := '[' sym (',' sym)* ']' | '~(' concat ')' | identifier | '(' expr ')'
//   sym    := '0' | '1' | '*'
//   exponent := integer | identifier | '(' arith ')'
//
// '~( ... )' is the block permutation: the union over all orderings of its
// factors, each factor moved as a whole. Powers inside it expand into
// repeated factors first, so "~([1,1][0,0]^2)" permutes three blocks.
// Identifiers may contain primes ("d'", "d''").

#include "hyperboot/vertex.hpp"

#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace hyperboot {

struct IntExpr {
    enum class Kind { Literal, Variable, Add, Sub, Mul, Div, Neg };

    Kind kind = Kind::Literal;
    std::int64_t value = 0;
    std::string name;
    std::vector<IntExpr> operands;
};

enum class Symbol : char { Zero = '0', One = '1', Any = '*' };

struct SubcubeExpr {
    enum class Kind { Block, Concat, Power, Perm, Union, NameRef };

    Kind kind = Kind::Block;
    std::vector<Symbol> block;
    // Concat, Perm and Union factors; the base for Power.
    std::vector<SubcubeExpr> children;
    IntExpr exponent;
    std::string name;
};

// Compact structural rendering, e.g. "Concat(Block[1,0],Power(Block[*],2))".
std::string to_string(const SubcubeExpr& e);
std::string to_string(const IntExpr& e);

struct Env {
    std::map<std::string, std::int64_t, std::less<>> ints;
    std::map<std::string, WordSet, std::less<>> sets;

    Env& let(std::string name, std::int64_t value)
    {
        ints.insert_or_assign(std::move(name), value);
        return *this;
    }
    Env& bind(std::string name, WordSet value)
    {
        sets.insert_or_assign(std::move(name), std::move(value));
        return *this;
    }
};

// Limits applied during evaluation.
inline constexpr std::size_t kMaxPermDistinctFactors = 10;
inline constexpr std::size_t kMaxSetElements = std::size_t{1} << 26;

SubcubeExpr parse_subcube(std::string_view text);
std::int64_t eval_int(const IntExpr& e, const Env& env);
WordSet eval_subcube(const SubcubeExpr& e, const Env& env);

inline WordSet evaluate(std::string_view text, const Env& env = {})
{
    return eval_subcube(parse_subcube(text), env);
}

}  // namespace hyperboot
