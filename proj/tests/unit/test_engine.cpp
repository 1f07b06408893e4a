#include "hyperboot/engine.hpp"
#include "hyperboot/errors.hpp"
#include "hyperboot/extremal.hpp"
#include "oracles.hpp"

#include <doctest.h>

#include <random>

using namespace hyperboot;

namespace {

WordSet set_of(int d, std::initializer_list<const char*> texts)
{
    std::vector<Vertex> vs;
    for (const char* t : texts) vs.push_back(Vertex::parse(t));
    return WordSet::from_vertices(d, vs);
}

WordSet random_set(int d, double p, std::mt19937_64& rng) { return WordSet(d, oracle::random_subset(d, p, rng)); }

}  // namespace

TEST_CASE("init")
{
    InfectionState s(2, 2, set_of(2, {"00", "11"}));
    CHECK(s.infected_count() == 2);
    CHECK(s.clock() == 0);
    CHECK(s.time_of(0) == 0);
    CHECK(s.time_of(1) == kNever);

    InfectionState e(3, 3, WordSet(3));
    CHECK(e.infected_count() == 0);

    CHECK_THROWS_AS(InfectionState(29, 2, WordSet(29)), GuardError);
    CHECK_THROWS_AS(InfectionState(3, 2, WordSet(2)), DimensionError);
    CHECK_THROWS_AS(InfectionState(3, 0, WordSet(3)), PreconditionError);
}

TEST_CASE("step")
{
    InfectionState s(2, 2, set_of(2, {"00", "11"}));
    CHECK(s.step() == set_of(2, {"10", "01"}));
    CHECK(s.clock() == 1);
    CHECK(s.step().empty());
    CHECK(s.clock() == 1);

    InfectionState full(3, 2, WordSet::full(3));
    CHECK(full.step().empty());

    InfectionState lone(3, 3, set_of(3, {"000"}));
    CHECK(lone.step().empty());
    CHECK(lone.clock() == 0);
}

TEST_CASE("step agrees with the naive oracle")
{
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 100; ++trial) {
        const int d = 2 + static_cast<int>(rng() % 6);
        const int r = 1 + static_cast<int>(rng() % 4);
        const WordSet init = random_set(d, 0.3, rng);
        std::set<Word> cur(init.begin(), init.end());
        InfectionState s(d, r, init);
        for (int round = 0; round < 5; ++round) {
            const std::set<Word> fresh = oracle::naive_step(d, r, cur);
            const WordSet got = s.step();
            CHECK(std::set<Word>(got.begin(), got.end()) == fresh);
            cur.insert(fresh.begin(), fresh.end());
        }
    }
}

TEST_CASE("run")
{
    const Outcome full = run(3, 3, WordSet::full(3));
    CHECK(full.percolated);
    CHECK(full.total_time == 0);

    const Outcome diag = run(2, 2, set_of(2, {"00", "11"}));
    CHECK(diag.percolated);
    CHECK(diag.total_time == 1);

    const Outcome r1 = run(2, 1, set_of(2, {"00"}));
    CHECK(r1.percolated);
    CHECK(r1.total_time == 2);
    CHECK(r1.times[Vertex::parse("11").bits()] == 2);

    const Outcome empty = run(4, 1, WordSet(4));
    CHECK_FALSE(empty.percolated);
    CHECK(empty.total_time == 0);
    CHECK(empty.final_infected().empty());
}

TEST_CASE("non-percolating runs report the last infection time")
{
    // Two antipodal sites on a square face of Q3 with r=2 fill only that face.
    const Outcome o = run(3, 2, set_of(3, {"000", "110"}));
    CHECK_FALSE(o.percolated);
    CHECK(o.total_time == 1);
    CHECK(o.infected_count == 4);
    CHECK(o.final_infected() == set_of(3, {"000", "100", "010", "110"}));
}

TEST_CASE("is_stable")
{
    CHECK(is_stable(3, 1, WordSet(3)));
    CHECK(is_stable(3, 3, WordSet::full(3)));
    CHECK_FALSE(is_stable(2, 2, set_of(2, {"00", "11"})));
    CHECK(is_stable(3, 2, set_of(3, {"000", "111"})));
}

TEST_CASE("engine matches naive and packed dynamics on random sets")
{
    std::mt19937_64 rng(17);
    for (int trial = 0; trial < 300; ++trial) {
        const int d = 1 + static_cast<int>(rng() % 6);
        const int r = 1 + static_cast<int>(rng() % 4);
        const WordSet init = random_set(d, 0.4, rng);
        const Outcome o = run(d, r, init);
        const oracle::NaiveRun n = oracle::naive_run(d, r, {init.begin(), init.end()});
        CHECK(o.percolated == n.percolated);
        CHECK(o.total_time == n.total_time);
        CHECK(std::equal(o.times.begin(), o.times.end(), n.times.begin()));

        std::uint64_t mask = 0;
        for (Word v : init) mask |= std::uint64_t{1} << v;
        const PackedRun p = run_packed(d, r, mask);
        CHECK(p.percolated == o.percolated);
        CHECK(p.total_time == o.total_time);
    }
}

TEST_CASE("monotonicity and termination")
{
    std::mt19937_64 rng(23);
    for (int trial = 0; trial < 100; ++trial) {
        const int d = 3 + static_cast<int>(rng() % 6);
        const int r = 1 + static_cast<int>(rng() % 3);
        const WordSet small = random_set(d, 0.15, rng);
        WordSet big = set_union(small, random_set(d, 0.1, rng));
        const Outcome a = run(d, r, small);
        const Outcome b = run(d, r, big);
        CHECK(a.total_time <= static_cast<int>((std::size_t{1} << d) - small.size()));
        for (Word v = 0; v < a.times.size(); ++v) {
            if (a.times[v] == kNever) continue;
            REQUIRE(b.times[v] != kNever);
            CHECK(b.times[v] <= a.times[v]);
        }
        // Per-round growth.
        InfectionState s(d, r, small);
        std::size_t prev = s.infected_count();
        while (!s.advance().empty()) {
            CHECK(s.infected_count() > prev);
            prev = s.infected_count();
        }
    }
}

TEST_CASE("r=1 infection time is the graph distance to the initial set")
{
    std::mt19937_64 rng(29);
    for (int trial = 0; trial < 50; ++trial) {
        const int d = 2 + static_cast<int>(rng() % 9);
        WordSet init = random_set(d, 0.02, rng);
        if (init.empty()) init.insert(rng() & low_mask(d));
        const Outcome o = run(d, 1, init);
        const std::vector<int> dist = oracle::bfs_distance(d, {init.begin(), init.end()});
        CHECK(o.percolated);
        CHECK(std::equal(o.times.begin(), o.times.end(), dist.begin()));
    }
}

TEST_CASE("dynamics are equivariant under hypercube automorphisms")
{
    std::mt19937_64 rng(31);
    for (int trial = 0; trial < 60; ++trial) {
        const int d = 3 + static_cast<int>(rng() % 6);
        const int r = 2 + static_cast<int>(rng() % 2);
        const WordSet init = random_set(d, 0.3, rng);
        std::vector<int> images(static_cast<std::size_t>(d));
        for (int i = 0; i < d; ++i) images[static_cast<std::size_t>(i)] = i + 1;
        std::shuffle(images.begin(), images.end(), rng);
        const CoordPermutation p(images);
        const Vertex mask(d, rng() & low_mask(d));

        const Outcome base = run(d, r, init);
        const Outcome moved = run(d, r, xor_translate(permute_coords(init, p), mask));
        CHECK(base.total_time == moved.total_time);
        CHECK(base.percolated == moved.percolated);
        for (Word v = 0; v < base.times.size(); ++v) CHECK(moved.times[p.apply(v) ^ mask.bits()] == base.times[v]);
    }
}

TEST_CASE("early-neighbour bound holds and is detected when broken")
{
    std::mt19937_64 rng(37);
    int percolating = 0;
    for (int trial = 0; trial < 200; ++trial) {
        const int d = 4 + static_cast<int>(rng() % 5);
        const int r = 2 + static_cast<int>(rng() % 3);
        const Outcome o = run(d, r, random_set(d, 0.55, rng));
        percolating += o.percolated;
        CHECK(early_neighbour_violations(o).empty());
    }
    CHECK(percolating > 0);

    Outcome fake;
    fake.d = 2;
    fake.r = 2;
    fake.times = {0, 0, 0, 3};  // vertex 3 at time 3 has two neighbours at time 0
    CHECK(early_neighbour_violations(fake) == std::vector<Word>{3});
}
