#pragma once

// Maximal percolation time: exhaustive oracle for tiny d, the (4r+2)2^d/d
// upper bound, and Monte Carlo statistics for random initial sets.

#include "hyperboot/vertex.hpp"

#include <cstdint>
#include <map>
#include <string>

namespace hyperboot {

// Whole-cube dynamics for d <= 6 with the state packed into one 64-bit word
// (bit v is vertex v).
struct PackedRun {
    bool percolated = false;
    int total_time = 0;
};
PackedRun run_packed(int d, int r, std::uint64_t initial);

struct MaxTimeResult {
    int d = 0;
    int r = 0;
    int max_time = 0;
    WordSet witness;
    bool exhaustive = false;
};

// Enumerates all 2^(2^d) initial sets. Refused for d > 4 unless allow_large
// (which admits d = 5).
MaxTimeResult brute_force_max_time(int d, int r, int threads = 1, bool allow_large = false);

// t <= (4r+2) 2^d / d, compared exactly. Requires r >= 3 and d >= r.
bool check_upper_bound(int d, int r, std::int64_t t);
// The bound as a reduced-free fraction {numerator, denominator}.
std::pair<std::uint64_t, std::uint64_t> upper_bound_fraction(int d, int r);

struct McStats {
    int d = 0;
    int r = 0;
    double p = 0.0;
    std::uint64_t samples = 0;
    std::uint64_t percolated_count = 0;
    // Percolation time -> number of percolating samples.
    std::map<int, std::uint64_t> histogram;
    double mean_time = 0.0;
    int max_time = 0;
    std::uint64_t seed = 0;
    std::string generator;
};

inline constexpr const char* kMcGenerator = "mt19937_64(splitmix64(seed ^ sample))";

McStats mc_percolation_time(int d, int r, double p, std::uint64_t samples, std::uint64_t seed, int threads = 1,
                            bool allow_large = false);

}  // namespace hyperboot
