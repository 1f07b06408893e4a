#include "hyperboot/extremal.hpp"

#include "hyperboot/engine.hpp"
#include "hyperboot/errors.hpp"

#include <algorithm>
#include <array>
#include <limits>
#include <random>
#include <thread>
#include <vector>

namespace hyperboot {

namespace {

// Positions v whose coordinate i is 0.
constexpr std::array<std::uint64_t, 6> kLowHalf = {
    0x5555555555555555ULL, 0x3333333333333333ULL, 0x0F0F0F0F0F0F0F0FULL,
    0x00FF00FF00FF00FFULL, 0x0000FFFF0000FFFFULL, 0x00000000FFFFFFFFULL,
};

std::uint64_t full_state(int d) { return d == 6 ? ~std::uint64_t{0} : (std::uint64_t{1} << (1 << d)) - 1; }

// Mask of vertices whose neighbour across coordinate i is set in x.
std::uint64_t across(std::uint64_t x, int i)
{
    const int s = 1 << i;
    const std::uint64_t m = kLowHalf[static_cast<std::size_t>(i)];
    return ((x & m) << s) | ((x >> s) & m);
}

template <class F>
void parallel_for(std::uint64_t n, int threads, F&& body)
{
    const auto workers = static_cast<std::uint64_t>(std::max(1, threads));
    if (workers == 1 || n < 2) {
        body(std::uint64_t{0}, n, std::size_t{0});
        return;
    }
    std::vector<std::thread> pool;
    const std::uint64_t chunk = (n + workers - 1) / workers;
    for (std::uint64_t w = 0; w < workers; ++w) {
        const std::uint64_t lo = w * chunk;
        const std::uint64_t hi = std::min(n, lo + chunk);
        if (lo >= hi) break;
        pool.emplace_back([&body, lo, hi, w] { body(lo, hi, static_cast<std::size_t>(w)); });
    }
    for (auto& t : pool) t.join();
}

std::uint64_t splitmix64(std::uint64_t x)
{
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

}  // namespace

PackedRun run_packed(int d, int r, std::uint64_t initial)
{
    if (d < 1 || d > 6) throw DimensionError("packed dynamics support 1 <= d <= 6, got " + std::to_string(d));
    if (r < 1) throw PreconditionError("threshold r must be at least 1");
    const std::uint64_t full = full_state(d);
    std::uint64_t x = initial & full;
    PackedRun out;
    if (r > d) {
        out.percolated = x == full;
        return out;
    }
    for (;;) {
        // at_least[j]: vertices with >= j infected neighbours among coordinates seen so far.
        std::array<std::uint64_t, 7> at_least{};
        at_least[0] = full;
        for (int i = 0; i < d; ++i) {
            const std::uint64_t n = across(x, i);
            for (int j = std::min(r, i + 1); j >= 1; --j) at_least[static_cast<std::size_t>(j)] |= at_least[static_cast<std::size_t>(j - 1)] & n;
        }
        const std::uint64_t fresh = at_least[static_cast<std::size_t>(r)] & ~x & full;
        if (fresh == 0) break;
        x |= fresh;
        ++out.total_time;
    }
    out.percolated = x == full;
    return out;
}

MaxTimeResult brute_force_max_time(int d, int r, int threads, bool allow_large)
{
    check_vertex_dim(d);
    if (r < 1) throw PreconditionError("threshold r must be at least 1");
    const int cap = allow_large ? 5 : 4;
    if (d > cap)
        throw GuardError("exhaustive maximal-time search refused for d=" + std::to_string(d) + " (guard d <= " +
                         std::to_string(cap) + (allow_large ? ")" : "; override admits d = 5)"));

    const std::uint64_t subsets = std::uint64_t{1} << (1 << d);
    struct Best {
        int time = -1;
        std::uint64_t mask = 0;
    };
    std::vector<Best> partial(static_cast<std::size_t>(std::max(1, threads)));
    parallel_for(subsets, threads, [&](std::uint64_t lo, std::uint64_t hi, std::size_t w) {
        Best best;
        for (std::uint64_t m = lo; m < hi; ++m) {
            const PackedRun run = run_packed(d, r, m);
            if (run.percolated && run.total_time > best.time) best = {run.total_time, m};
        }
        partial[w] = best;
    });
    // Chunks are in increasing mask order, so the first strict maximum is the smallest witness.
    Best best;
    for (const Best& b : partial)
        if (b.time > best.time) best = b;

    std::vector<Word> witness;
    for (Word v = 0; v < (Word{1} << d); ++v)
        if ((best.mask >> v) & 1U) witness.push_back(v);
    return MaxTimeResult{d, r, best.time, WordSet(d, std::move(witness)), true};
}

namespace {

void check_bound_args(int d, int r)
{
    if (r < 3) throw PreconditionError("upper bound stated for r >= 3, got r=" + std::to_string(r));
    if (d < r) throw PreconditionError("upper bound stated for d >= r, got d=" + std::to_string(d));
    check_vertex_dim(d);
}

}  // namespace

std::pair<std::uint64_t, std::uint64_t> upper_bound_fraction(int d, int r)
{
    check_bound_args(d, r);
    const unsigned __int128 num = static_cast<unsigned __int128>(4 * r + 2) << d;
    if (num > std::numeric_limits<std::uint64_t>::max())
        throw DimensionError("bound numerator does not fit in 64 bits for d=" + std::to_string(d));
    return {static_cast<std::uint64_t>(num), static_cast<std::uint64_t>(d)};
}

bool check_upper_bound(int d, int r, std::int64_t t)
{
    check_bound_args(d, r);
    // (4r+2) 2^d < 2^71 for d, r <= 63.
    const __int128 num = static_cast<__int128>(4 * r + 2) << d;
    return static_cast<__int128>(t) * d <= num;
}

McStats mc_percolation_time(int d, int r, double p, std::uint64_t samples, std::uint64_t seed, int threads,
                            bool allow_large)
{
    check_table_dim(d, allow_large);
    if (r < 1) throw PreconditionError("threshold r must be at least 1");
    if (!(p >= 0.0 && p <= 1.0)) throw PreconditionError("probability p must lie in [0, 1]");

    const Word n = Word{1} << d;
    std::vector<std::int32_t> times(samples, kNever);
    parallel_for(samples, threads, [&](std::uint64_t lo, std::uint64_t hi, std::size_t) {
        std::vector<Word> initial;
        for (std::uint64_t s = lo; s < hi; ++s) {
            std::mt19937_64 gen(splitmix64(seed ^ s));
            initial.clear();
            for (Word v = 0; v < n; ++v) {
                const double u = static_cast<double>(gen() >> 11) * 0x1.0p-53;
                if (u < p) initial.push_back(v);
            }
            const Outcome out = run(d, r, WordSet(d, initial), allow_large);
            if (out.percolated) times[s] = out.total_time;
        }
    });

    McStats stats;
    stats.d = d;
    stats.r = r;
    stats.p = p;
    stats.samples = samples;
    stats.seed = seed;
    stats.generator = kMcGenerator;
    double sum = 0.0;
    for (std::int32_t t : times) {
        if (t == kNever) continue;
        ++stats.percolated_count;
        ++stats.histogram[t];
        sum += t;
        stats.max_time = std::max(stats.max_time, static_cast<int>(t));
    }
    if (stats.percolated_count > 0) stats.mean_time = sum / static_cast<double>(stats.percolated_count);
    return stats;
}

}  // namespace hyperboot
