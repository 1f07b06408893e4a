#pragma once

// k-snakes: hypercube paths S_0..S_T whose sites at path distance >= k are
// also at Hamming distance >= k.

#include "hyperboot/vertex.hpp"

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace hyperboot {

class SnakePath {
public:
    SnakePath(int k, int dim, std::vector<Word> sites);
    static SnakePath from_vertices(int k, std::span<const Vertex> sites);

    int k() const { return k_; }
    int dim() const { return dim_; }
    // Number of steps T (one less than the number of sites).
    int length() const { return static_cast<int>(sites_.size()) - 1; }
    Word operator[](std::size_t t) const { return sites_[t]; }
    Vertex site(std::size_t t) const { return Vertex(dim_, sites_.at(t)); }
    std::span<const Word> sites() const { return sites_; }

    friend bool operator==(const SnakePath&, const SnakePath&) = default;

private:
    int k_;
    int dim_;
    std::vector<Word> sites_;
};

struct SnakeViolation {
    enum class Kind { NotAdjacent, Repeated, Spread };
    Kind kind;
    int first;
    int second;
    int distance;

    std::string describe() const;
};

// Checks adjacency, distinctness, then spread pairs by increasing (t, t').
std::optional<SnakeViolation> verify_snake(std::span<const Vertex> sites, int k);
std::optional<SnakeViolation> verify_snake(const SnakePath& path);

// Returns the first pair with |t - t'| <= k whose distance differs from
// |t - t'|, or nothing. Requires length > k.
std::optional<std::pair<int, int>> check_local_isometry(const SnakePath& path);

SnakePath normalize_end_to_zero(const SnakePath& path);
SnakePath xor_translate(const SnakePath& path, Vertex mask);
SnakePath permute_coords(const SnakePath& path, const CoordPermutation& p);

struct SnakeSearchOptions {
    enum class Mode { Exhaustive, Budget };
    Mode mode = Mode::Exhaustive;
    // Budget mode: number of extension attempts before stopping.
    std::uint64_t node_limit = 1'000'000;
    // Exhaustive search is refused above this dimension unless overridden.
    int max_exhaustive_dim = 7;
    bool allow_large = false;
    // Require coordinates to be first used in increasing order.
    bool canonical = true;
};

struct SnakeSearchResult {
    SnakePath path;
    bool exhaustive = false;
    std::uint64_t nodes = 0;
};

// Depth-first search from the all-zero vertex. Among maximal paths the
// lexicographically smallest site sequence is returned.
SnakeSearchResult search_longest(int d, int k, const SnakeSearchOptions& options = {});

// Number of k-snakes rooted at zero, indexed [length][coordinates used].
std::vector<std::vector<std::uint64_t>> count_snakes(int d, int k, bool canonical);

// 2^d / (d log2(d)^2). The base-2 logarithm is a convention.
double reference_lower_bound(int d);

// Snake file: "k=<int> d=<int>" header, then one vertex per line in path order.
SnakePath read_snake(std::istream& in);
SnakePath read_snake_file(const std::string& path);
void write_snake(std::ostream& out, const SnakePath& path);
void write_snake_file(const std::string& path, const SnakePath& snake);

}  // namespace hyperboot
