#include "hyperboot/construction.hpp"

#include "hyperboot/errors.hpp"
#include "hyperboot/subcube.hpp"

#include <algorithm>

namespace hyperboot {

ConstructionParams ConstructionParams::for_dimension(int d)
{
    if (d < 15 || d % 2 == 0)
        throw PreconditionError("construction needs odd d >= 15, got d=" + std::to_string(d));
    check_vertex_dim(d);
    return ConstructionParams{d, d - 3, d - 9};
}

// ------------------------------------------------------------ modified snake

ModifiedSnakeReport check_modified_snake(const SnakePath& s, std::optional<int> input_length)
{
    ModifiedSnakeReport rep;
    rep.is_3_snake = !verify_snake(SnakePath(3, s.dim(), {s.sites().begin(), s.sites().end()})).has_value();
    const int T = s.length();
    if (input_length) rep.length_relation = T == *input_length + 1;
    if (T < 3 || s.dim() < 5) return rep;
    auto at = [&](int t) { return s[static_cast<std::size_t>(t)]; };
    rep.end_minus_3 = at(T - 3) == 0b10101;
    rep.end_minus_2 = at(T - 2) == 0b101;
    rep.end_minus_1 = at(T - 1) == 0b1;
    rep.end_zero = at(T) == 0;
    rep.heavy_body = true;
    for (int t = 0; t < T - 3; ++t)
        if (__builtin_popcountll(at(t)) <= 3) rep.heavy_body = false;
    return rep;
}

SnakePath build_modified_snake(const SnakePath& input)
{
    if (input.dim() < 5) throw PreconditionError("modified snake needs input dimension >= 5");
    if (input.length() < 2) throw PreconditionError("modified snake needs input length >= 2");
    const SnakePath as3(3, input.dim(), {input.sites().begin(), input.sites().end()});
    if (auto bad = verify_snake(as3)) throw PreconditionError("input is not a 3-snake: " + bad->describe());

    const SnakePath z = normalize_end_to_zero(as3);
    const int T = z.length();
    const Word last1 = z[static_cast<std::size_t>(T - 1)];
    const Word last2 = z[static_cast<std::size_t>(T - 2)];
    const int a = __builtin_ctzll(last1) + 1;
    const int b = __builtin_ctzll(last2 ^ last1) + 1;

    // a -> 2, then b (wherever it went) -> 4.
    const int m = z.dim();
    const CoordPermutation first = CoordPermutation::transposition(m, a, 2);
    const CoordPermutation perm = first.then(CoordPermutation::transposition(m, first.image(b), 4));
    const SnakePath p = permute_coords(z, perm);

    std::vector<Word> sites;
    sites.reserve(p.sites().size() + 1);
    for (Word w : p.sites()) sites.push_back((w << 1) | 1U);
    sites.push_back(0);
    return SnakePath(3, m + 1, std::move(sites));
}

// ---------------------------------------------------------- initial config

WordSet ConstructionParts::initial_set() const
{
    WordSet all = set_union(i0, j1);
    all = set_union(all, j2);
    all = set_union(all, j3);
    all.insert(seed.bits());
    return all;
}

ConstructionParts build_initial_config(const SnakePath& snake, int d)
{
    const ConstructionParams params = ConstructionParams::for_dimension(d);
    if (snake.dim() != params.d_dprime)
        throw PreconditionError("snake has dimension " + std::to_string(snake.dim()) + ", expected d-9 = " +
                                std::to_string(params.d_dprime));
    const ModifiedSnakeReport rep = check_modified_snake(snake);
    if (!rep.all()) throw PreconditionError("snake does not satisfy the modified-snake conditions");

    const int T = snake.length();
    std::array<WordSet, 3> classes{WordSet(params.d_dprime), WordSet(params.d_dprime), WordSet(params.d_dprime)};
    for (int i = 1; i <= 3; ++i)
        for (int t = T - i; t >= 0; t -= 3) classes[static_cast<std::size_t>(i - 1)].insert(snake[static_cast<std::size_t>(t)]);

    Env env;
    env.let("d", d).let("d'", params.d_prime).let("d''", params.d_dprime);
    env.bind("S0", WordSet(params.d_dprime, {snake[0]}));
    env.bind("S_T1", WordSet(params.d_dprime, {snake[static_cast<std::size_t>(T - 1)]}));
    env.bind("S1CLASS", classes[0]).bind("S2CLASS", classes[1]).bind("S3CLASS", classes[2]);

    const WordSet seed = evaluate(kSeedExpr, env);
    ConstructionParts parts{params,
                            snake,
                            Vertex(d, *seed.begin()),
                            evaluate(kI0Expr, env),
                            evaluate(kJ1Expr, env),
                            evaluate(kJ2Expr, env),
                            evaluate(kJ3Expr, env),
                            classes};
    return parts;
}

// ------------------------------------------------------------------- audit

bool StructureReport::passed() const
{
    return parts_disjoint && std::all_of(bullets.begin(), bullets.end(), [](const AuditBullet& b) { return b.passed; });
}

namespace {

// Two sites of the hypercube share a neighbour iff they coincide or are at distance 2.
bool share_neighbour(Word a, Word b)
{
    const int dist = word_distance(a, b);
    return dist == 0 || dist == 2;
}

AuditBullet no_common_neighbours(const std::string& name, std::initializer_list<const WordSet*> sets)
{
    AuditBullet bullet{name, true, std::nullopt};
    const std::vector<const WordSet*> v(sets);
    for (std::size_t i = 0; i < v.size(); ++i)
        for (std::size_t j = i + 1; j < v.size(); ++j)
            for (Word a : *v[i])
                for (Word b : *v[j])
                    if (share_neighbour(a, b)) {
                        bullet.passed = false;
                        bullet.witness = std::pair{a, b};
                        return bullet;
                    }
    return bullet;
}

AuditBullet snake_meets_only_at(const std::string& name, const ConstructionParts& parts, const WordSet& set,
                                int expected_t)
{
    AuditBullet bullet{name, true, std::nullopt};
    for (int t = 0; t <= parts.length(); ++t) {
        const Word site = parts.lifted_site(t);
        std::optional<Word> partner;
        for (Word b : set)
            if (share_neighbour(site, b)) {
                partner = b;
                break;
            }
        if (partner.has_value() != (t == expected_t)) {
            bullet.passed = false;
            bullet.witness = std::pair{site, partner.value_or(site)};
            return bullet;
        }
    }
    return bullet;
}

}  // namespace

StructureReport audit_structure(const ConstructionParts& parts)
{
    StructureReport rep;
    const int T = parts.length();

    rep.bullets.push_back(no_common_neighbours("I0, J2, J3 pairwise without common neighbours",
                                               {&parts.i0, &parts.j2, &parts.j3}));

    AuditBullet j3{"J3 close pairs are ([1,0,0]x, [0,1,0]x)", true, std::nullopt};
    for (auto a = parts.j3.begin(); a != parts.j3.end() && j3.passed; ++a)
        for (auto b = std::next(a); b != parts.j3.end(); ++b)
            if (word_distance(*a, *b) <= 2 && (*a ^ *b) != 0b11) {
                j3.passed = false;
                j3.witness = std::pair{*a, *b};
                break;
            }
    rep.bullets.push_back(j3);

    AuditBullet i0{"every I0 site has exactly one other I0 site within distance 2", true, std::nullopt};
    for (Word a : parts.i0) {
        int close = 0;
        Word other = a;
        for (Word b : parts.i0)
            if (b != a && word_distance(a, b) <= 2) {
                ++close;
                other = b;
            }
        if (close != 1) {
            i0.passed = false;
            i0.witness = std::pair{a, other};
            break;
        }
    }
    rep.bullets.push_back(i0);

    rep.bullets.push_back(snake_meets_only_at("snake shares neighbours with J3 only at T-1", parts, parts.j3, T - 1));
    rep.bullets.push_back(snake_meets_only_at("snake shares neighbours with J2 only at T", parts, parts.j2, T));

    const WordSet seed(parts.params.d, {parts.seed.bits()});
    const std::array<const WordSet*, 5> all{&seed, &parts.i0, &parts.j1, &parts.j2, &parts.j3};
    for (std::size_t i = 0; i < all.size(); ++i)
        for (std::size_t j = i + 1; j < all.size(); ++j)
            if (!set_intersection(*all[i], *all[j]).empty()) rep.parts_disjoint = false;
    return rep;
}

// ------------------------------------------------------------------ claims

Claim1Verdict verify_claim1(const ConstructionParts& parts)
{
    const int d = parts.params.d;
    const WordSet initial = parts.initial_set();
    InfectionState state(d, 3, initial);
    std::vector<Word> expected(state.infected_bitmap().size(), 0);
    for (Word v : initial) expected[v >> 6] |= Word{1} << (v & 63);

    Claim1Verdict verdict;
    for (int t = 0; t < parts.length(); ++t) {
        if (t > 0) {
            state.advance();
            const Word s = parts.lifted_site(t);
            expected[s >> 6] |= Word{1} << (s & 63);
        }
        ++verdict.rounds_checked;
        const auto actual = state.infected_bitmap();
        if (std::equal(actual.begin(), actual.end(), expected.begin())) continue;
        verdict.passed = false;
        verdict.failing_round = t;
        for (Word v = 0; v < state.vertex_count(); ++v) {
            const bool want = (expected[v >> 6] >> (v & 63)) & 1U;
            if (want && !state.infected(v)) verdict.missing.push_back(v);
            if (!want && state.infected(v)) verdict.parasites.push_back(v);
        }
        break;
    }
    return verdict;
}

Outcome verify_claim2(const ConstructionParts& parts)
{
    Env env;
    env.bind("J1", parts.j1).bind("J2", parts.j2).bind("J3", parts.j3);
    env.bind("S_T1", WordSet(parts.params.d_dprime, {parts.snake[static_cast<std::size_t>(parts.length() - 1)]}));
    return run(parts.params.d, 3, evaluate(kClaim2Expr, env));
}

WitnessResult lower_bound_witness(int d, const SnakePath& source_snake)
{
    const ConstructionParams params = ConstructionParams::for_dimension(d);
    if (source_snake.dim() != d - 10)
        throw PreconditionError("source snake has dimension " + std::to_string(source_snake.dim()) +
                                ", expected d-10 = " + std::to_string(d - 10));
    const SnakePath modified = build_modified_snake(source_snake);
    ModifiedSnakeReport snake_report = check_modified_snake(modified, source_snake.length());
    ConstructionParts parts = build_initial_config(modified, params.d);
    StructureReport audit = audit_structure(parts);
    Claim1Verdict claim1 = verify_claim1(parts);
    const bool claim2 = verify_claim2(parts).percolated;
    Outcome outcome = run(d, 3, parts.initial_set());
    return WitnessResult{std::move(parts), snake_report, std::move(audit), std::move(claim1), claim2,
                         std::move(outcome)};
}

// -------------------------------------------------------------- reductions

WordSet double_config(const WordSet& a)
{
    if (a.dim() + 1 > kMaxVertexDim) throw DimensionError("doubled set would exceed 63 coordinates");
    std::vector<Word> out;
    out.reserve(2 * a.size());
    for (Word w : a) {
        out.push_back(w << 1);
        out.push_back((w << 1) | 1U);
    }
    return WordSet(a.dim() + 1, std::move(out));
}

WordSet pad_for_r(const WordSet& cfg, int r)
{
    if (r < 3) throw PreconditionError("pad_for_r needs r >= 3, got " + std::to_string(r));
    const int extra = r - 3;
    if (extra == 0) return cfg;
    const int dim = cfg.dim() + extra;
    check_table_dim(dim, false);
    const Word ones = low_mask(extra);
    std::vector<Word> out;
    for (Word w : cfg) out.push_back(ones | (w << extra));
    const Word n = Word{1} << dim;
    for (Word w = 0; w < n; ++w)
        if ((w & ones) != ones) out.push_back(w);
    return WordSet(dim, std::move(out));
}

}  // namespace hyperboot
