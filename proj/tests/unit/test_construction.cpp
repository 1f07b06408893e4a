#include "hyperboot/construction.hpp"
#include "hyperboot/engine.hpp"
#include "hyperboot/errors.hpp"
#include "oracles.hpp"

#include <doctest.h>

#include <random>

using namespace hyperboot;

namespace {

SnakePath snake(int k, std::initializer_list<const char*> texts)
{
    std::vector<Vertex> vs;
    for (const char* t : texts) vs.push_back(Vertex::parse(t));
    return SnakePath::from_vertices(k, vs);
}

const ConstructionParts& parts15()
{
    static const ConstructionParts p = build_initial_config(build_modified_snake(search_longest(5, 3).path), 15);
    return p;
}

// The same parts assembled with explicit bit operations (bit i is coordinate i+1).
struct Manual {
    WordSet i0, j1, j2, j3;
};

Manual manual_parts(const SnakePath& s, int d)
{
    const int dp = d - 3;
    const int T = s.length();
    std::vector<Word> i0, j1, j3;
    for (int i = 1; i <= 3; ++i) {
        const int lo = 1 + 2 * i;  // gadget pair {4,5}, {6,7} or {8,9}
        for (int t = T - i; t >= 0; t -= 3) {
            const Word site = s[static_cast<std::size_t>(t)] << 9;
            i0.push_back(site | (Word{1} << lo));
            i0.push_back(site | (Word{1} << (lo + 1)));
        }
    }
    for (Word free = 0; free < (Word{1} << (dp + 1)); ++free) j1.push_back(0b11 | (free << 2));
    for (Word first : {Word{1}, Word{2}})
        for (int l = 0; l <= (dp - 2) / 2; ++l) j3.push_back(first | (Word{0b11} << (3 + 2 * l)));
    return {WordSet(d, i0), WordSet(d, j1), WordSet(d, {0b101, 0b110}), WordSet(d, j3)};
}

}  // namespace

TEST_CASE("modified snake from a short input")
{
    const SnakePath in = snake(3, {"01110", "00110", "00100", "00000"});
    const SnakePath out = build_modified_snake(in);
    CHECK(out == snake(3, {"101110", "101010", "101000", "100000", "000000"}));
    const ModifiedSnakeReport rep = check_modified_snake(out, in.length());
    CHECK(rep.is_3_snake);
    CHECK(rep.end_minus_3);
    CHECK(rep.end_minus_2);
    CHECK(rep.end_minus_1);
    CHECK(rep.end_zero);
    CHECK(rep.heavy_body);
    CHECK(rep.length_relation == true);
    CHECK(rep.all());
}

TEST_CASE("modified snake preconditions")
{
    CHECK_THROWS_AS(build_modified_snake(snake(3, {"0000", "1000", "1100"})), PreconditionError);
    CHECK_THROWS_AS(build_modified_snake(snake(3, {"00000", "10000"})), PreconditionError);
    CHECK_THROWS_AS(build_modified_snake(snake(3, {"00000", "10000", "11000", "11100", "01100"})), PreconditionError);
}

TEST_CASE("modified snake conditions hold for every input position")
{
    // Translating and permuting the input must not matter.
    std::mt19937_64 rng(41);
    for (int dim = 5; dim <= 6; ++dim) {
        const SnakePath base = search_longest(dim, 3).path;
        for (int trial = 0; trial < 20; ++trial) {
            std::vector<int> images(static_cast<std::size_t>(dim));
            for (int i = 0; i < dim; ++i) images[static_cast<std::size_t>(i)] = i + 1;
            std::shuffle(images.begin(), images.end(), rng);
            const SnakePath moved =
                xor_translate(permute_coords(base, CoordPermutation(images)), Vertex(dim, rng() & low_mask(dim)));
            const SnakePath out = build_modified_snake(moved);
            CHECK(out.dim() == dim + 1);
            CHECK(check_modified_snake(out, moved.length()).all());
        }
    }
}

TEST_CASE("construction parameters")
{
    CHECK_THROWS_AS(ConstructionParams::for_dimension(13), PreconditionError);
    CHECK_THROWS_AS(ConstructionParams::for_dimension(16), PreconditionError);
    const ConstructionParams p = ConstructionParams::for_dimension(17);
    CHECK(p.d_prime == 14);
    CHECK(p.d_dprime == 8);
    CHECK_THROWS_AS(build_initial_config(search_longest(6, 3).path, 15), PreconditionError);
}

TEST_CASE("parts at d=15")
{
    const ConstructionParts& p = parts15();
    CHECK(p.length() == 8);
    CHECK(p.i0.size() == 16);
    CHECK(p.j1.size() == 8192);
    CHECK(p.j2.size() == 2);
    CHECK(p.j3.size() == 12);
    CHECK(p.seed.bits() == p.lifted_site(0));
    CHECK(p.initial_set().size() == 1 + 16 + 8192 + 2 + 12);

    const Manual m = manual_parts(p.snake, 15);
    CHECK(p.i0 == m.i0);
    CHECK(p.j1 == m.j1);
    CHECK(p.j2 == m.j2);
    CHECK(p.j3 == m.j3);

    // The final snake site has no neighbour in I0.
    const Word end = p.lifted_site(p.length());
    for (Word w : p.i0) CHECK(word_distance(w, end) != 1);
}

TEST_CASE("structure audit")
{
    const ConstructionParts& p = parts15();
    const StructureReport ok = audit_structure(p);
    REQUIRE(ok.bullets.size() == 5);
    CHECK(ok.passed());
    CHECK(ok.parts_disjoint);

    ConstructionParts bad = p;
    bad.j3.insert(0b1 | (Word{0b101} << 3));  // [1,0,0][1,0,1][0]^...
    const StructureReport rep = audit_structure(bad);
    CHECK_FALSE(rep.passed());
    CHECK_FALSE(rep.bullets[1].passed);
    CHECK(rep.bullets[1].witness.has_value());
}

TEST_CASE("snake is infected one site per round")
{
    const ConstructionParts& p = parts15();
    const Claim1Verdict ok = verify_claim1(p);
    CHECK(ok.passed);
    CHECK(ok.rounds_checked == p.length());

    ConstructionParts missing = p;
    missing.i0.erase(*missing.i0.begin());
    const Claim1Verdict m = verify_claim1(missing);
    CHECK_FALSE(m.passed);
    CHECK(m.failing_round.has_value());
    CHECK_FALSE(m.missing.empty());

    ConstructionParts extra = p;
    const Word mid = p.lifted_site(p.length() / 2);
    extra.i0.insert(mid ^ (Word{1} << 9 << 4));
    const Claim1Verdict e = verify_claim1(extra);
    CHECK_FALSE(e.passed);
    CHECK(e.failing_round.has_value());
}

TEST_CASE("gadget percolates from the end of the snake")
{
    const ConstructionParts& p = parts15();
    CHECK(verify_claim2(p).percolated);

    // Without J2 the gadget is short of infected sites; recorded, not required.
    ConstructionParts no_j2 = p;
    no_j2.j2 = WordSet(15);
    const Outcome o = verify_claim2(no_j2);
    MESSAGE("claim2 without J2 percolated=" << o.percolated << " infected=" << o.infected_count);
}

TEST_CASE("end-to-end witness")
{
    const WitnessResult w15 = lower_bound_witness(15, search_longest(5, 3).path);
    CHECK(w15.passed());
    CHECK(w15.outcome.total_time >= w15.parts.length());
    CHECK(early_neighbour_violations(w15.outcome).empty());

    SnakeSearchOptions budget;
    budget.mode = SnakeSearchOptions::Mode::Budget;
    budget.node_limit = 20000;
    const WitnessResult w17 = lower_bound_witness(17, search_longest(7, 3, budget).path);
    CHECK(w17.passed());
    CHECK(w17.outcome.total_time >= w17.parts.length());

    CHECK_THROWS_AS(lower_bound_witness(13, search_longest(3, 3).path), PreconditionError);
    CHECK_THROWS_AS(lower_bound_witness(15, search_longest(6, 3).path), PreconditionError);
}

TEST_CASE("doubling")
{
    CHECK(double_config(WordSet(2, {0})) == WordSet(3, {0, 1}));
    CHECK(double_config(WordSet(3)).empty());
    CHECK(double_config(WordSet(3)).dim() == 4);

    std::mt19937_64 rng(43);
    for (int trial = 0; trial < 60; ++trial) {
        const int d = 3 + static_cast<int>(rng() % 5);
        const int r = 2 + static_cast<int>(rng() % 2);
        const WordSet a(d, oracle::random_subset(d, 0.4, rng));
        const Outcome base = run(d, r, a);
        const Outcome doubled = run(d + 1, r, double_config(a));
        CHECK(doubled.percolated == base.percolated);
        CHECK(doubled.total_time == base.total_time);
        for (Word w = 0; w < base.times.size(); ++w) {
            CHECK(doubled.times[w << 1] == base.times[w]);
            CHECK(doubled.times[(w << 1) | 1] == base.times[w]);
        }
    }
}

TEST_CASE("padding for larger thresholds")
{
    const WordSet a(3, {0, 7});
    CHECK(pad_for_r(a, 3) == a);
    CHECK_THROWS_AS(pad_for_r(a, 2), PreconditionError);

    const WordSet p4 = pad_for_r(a, 4);
    CHECK(p4.dim() == 4);
    CHECK(p4.size() == 2 + 8);

    std::mt19937_64 rng(47);
    for (int trial = 0; trial < 40; ++trial) {
        const int m = 3 + static_cast<int>(rng() % 4);
        const int r = 4 + static_cast<int>(rng() % 2);
        const WordSet cfg(m, oracle::random_subset(m, 0.5, rng));
        const Outcome base = run(m, 3, cfg);
        const Outcome padded = run(m + r - 3, r, pad_for_r(cfg, r));
        CHECK(padded.total_time == base.total_time);
        CHECK(padded.percolated == base.percolated);
        const Word ones = low_mask(r - 3);
        for (Word w = 0; w < base.times.size(); ++w) CHECK(padded.times[ones | (w << (r - 3))] == base.times[w]);
    }
}
