#include "hyperboot/errors.hpp"
#include "hyperboot/subcube.hpp"

#include <doctest.h>

#include <algorithm>
#include <random>

using namespace hyperboot;

namespace {

std::vector<std::string> strings(const WordSet& s)
{
    std::vector<std::string> out;
    for (Word w : s) out.push_back(format_word(w, s.dim()));
    return out;
}

}  // namespace

TEST_CASE("parse builds the expected tree")
{
    CHECK(to_string(parse_subcube("[1,0,1][*]^2[0]")) == "Concat(Block[1,0,1],Power(Block[*],2),Block[0])");
    CHECK(to_string(parse_subcube("~([0][1])")) == "Perm(Block[0],Block[1])");
    CHECK(to_string(parse_subcube(" [ 1 , * ] | [0,0] ")) == "Union(Block[1,*],Block[0,0])");
    CHECK(to_string(parse_subcube("[0,0]^((d'-2)/2)")) == "Power(Block[0,0],((d'-2)/2))");
    CHECK(to_string(parse_subcube("[0]^9 S0")) == "Concat(Power(Block[0],9),Name(S0))");
    CHECK(to_string(parse_subcube("~([1,1][0,0]^k)")) == "Perm(Block[1,1],Power(Block[0,0],k))");
}

TEST_CASE("parse errors carry positions")
{
    try {
        parse_subcube("[0,2]");
        FAIL("expected a parse error");
    } catch (const ParseError& e) {
        CHECK(e.position() == 3);
    }
    CHECK_THROWS_AS(parse_subcube(""), ParseError);
    CHECK_THROWS_AS(parse_subcube("[0"), ParseError);
    CHECK_THROWS_AS(parse_subcube("[]"), ParseError);
    CHECK_THROWS_AS(parse_subcube("~[0]"), ParseError);
    CHECK_THROWS_AS(parse_subcube("[0]^"), ParseError);
    CHECK_THROWS_AS(parse_subcube("[0] |"), ParseError);
    CHECK_THROWS_AS(parse_subcube("[0])"), ParseError);
}

TEST_CASE("worked examples from the notation")
{
    CHECK(strings(evaluate("[1,0,1][0]^2")) == std::vector<std::string>{"10100"});

    const WordSet six = evaluate("[0]~([0]^2[1,0])[*]");
    std::vector<std::string> got = strings(six);
    std::sort(got.begin(), got.end());
    CHECK(got == std::vector<std::string>{"000100", "000101", "001000", "001001", "010000", "010001"});

    CHECK(evaluate("~([1]^2[0]^2)").size() == 6);
    CHECK(evaluate("~([1,1][0,0])").size() == 2);
    CHECK(evaluate("~([1,0]^2)").size() == 1);
}

TEST_CASE("overline of [1,1][0,0]^k is the union of shifted pairs")
{
    for (int k = 0; k <= 6; ++k) {
        Env env;
        env.let("k", k);
        WordSet expected(2 * k + 2);
        for (int l = 0; l <= k; ++l) {
            Env e2 = env;
            e2.let("l", l);
            expected = set_union(expected, evaluate("[0,0]^l[1,1][0,0]^(k-l)", e2));
        }
        CHECK(evaluate("~([1,1][0,0]^k)", env) == expected);
    }
    CHECK(evaluate("~([1,1][0,0]^3)") == evaluate("[1,1][0,0]^3|[0,0][1,1][0,0]^2|[0,0]^2[1,1][0,0]|[0,0]^3[1,1]"));
}

TEST_CASE("powers, bindings and the empty word")
{
    CHECK(evaluate("[1]^0") == WordSet(0, {0}));
    CHECK(evaluate("[1][*]^0") == WordSet(1, {1}));
    Env env;
    env.let("d", 7).let("d'", 4);
    CHECK(evaluate("[*]^(d-d')", env).size() == 8);
    CHECK(evaluate("[0]^(2*d'-8)[1]", env) == WordSet(1, {1}));
    env.bind("A", WordSet(2, {1, 2}));
    CHECK(evaluate("A[1]", env) == WordSet(3, {5, 6}));
    CHECK(evaluate("(A|[1,1])[0]", env).size() == 3);
}

TEST_CASE("evaluation errors")
{
    CHECK_THROWS_AS(evaluate("X"), EvalError);
    CHECK_THROWS_AS(evaluate("[0]^n"), EvalError);
    CHECK_THROWS_AS(evaluate("[0]^(1-2)"), EvalError);
    CHECK_THROWS_AS(evaluate("[0]^(3/2)"), EvalError);
    CHECK_THROWS_AS(evaluate("[0]^(3/0)"), EvalError);
    CHECK_THROWS_AS(evaluate("[0]|[0,0]"), EvalError);
    CHECK_THROWS_AS(evaluate("[0]^64"), EvalError);
    CHECK_THROWS_AS(evaluate("~([0][1][0,0][0,1][1,0][1,1][0,0,0][0,0,1][0,1,0][0,1,1][1,0,0])"), EvalError);
    CHECK_NOTHROW(evaluate("~([0][1][0,0][0,1][1,0][1,1][0,0,0][0,0,1][0,1,0][0,1,1])"));
}

TEST_CASE("block cardinality and concatenation product")
{
    std::mt19937_64 rng(3);
    const char syms[] = {'0', '1', '*'};
    for (int trial = 0; trial < 200; ++trial) {
        auto random_block = [&](int len, int& stars) {
            std::string s = "[";
            stars = 0;
            for (int i = 0; i < len; ++i) {
                const char c = syms[rng() % 3];
                stars += c == '*';
                if (i) s += ',';
                s += c;
            }
            return s + "]";
        };
        int sa = 0, sb = 0;
        const std::string a = random_block(1 + static_cast<int>(rng() % 6), sa);
        const std::string b = random_block(1 + static_cast<int>(rng() % 6), sb);
        const WordSet ea = evaluate(a), eb = evaluate(b);
        CHECK(ea.size() == (std::size_t{1} << sa));
        CHECK(evaluate(a + b).size() == ea.size() * eb.size());
        CHECK(evaluate(a + b) == evaluate(a + b));
    }
}

TEST_CASE("permutation agrees with a brute-force union over orderings")
{
    std::mt19937_64 rng(11);
    const std::vector<std::string> pool = {"[0]", "[1]", "[1,0]", "[0,1]", "[*]", "[1,1]", "[0,*]"};
    for (int trial = 0; trial < 150; ++trial) {
        const int n = 1 + static_cast<int>(rng() % 6);
        std::vector<std::string> factors;
        for (int i = 0; i < n; ++i) factors.push_back(pool[rng() % pool.size()]);
        std::string perm = "~(";
        for (const auto& f : factors) perm += f;
        perm += ")";

        std::vector<int> idx(static_cast<std::size_t>(n));
        for (int i = 0; i < n; ++i) idx[static_cast<std::size_t>(i)] = i;
        std::vector<Word> all;
        int dim = -1;
        do {
            std::string concat;
            for (int i : idx) concat += factors[static_cast<std::size_t>(i)];
            const WordSet s = evaluate(concat);
            dim = s.dim();
            all.insert(all.end(), s.begin(), s.end());
        } while (std::next_permutation(idx.begin(), idx.end()));
        CHECK(evaluate(perm) == WordSet(dim, all));
    }
}
