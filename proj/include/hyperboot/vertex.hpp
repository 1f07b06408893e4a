#pragma once

// Vertices of {0,1}^d, word sets and hypercube automorphisms.
//
// Coordinate i (1-based, as in tuple notation) lives in bit i-1. The text
// form lists coordinate 1 first, so "100" is the word with value 1.

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace hyperboot {

using Word = std::uint64_t;

inline constexpr int kMaxVertexDim = 63;
// Largest d for which a dense 2^d state table is allocated by default.
inline constexpr int kMaxTableDim = 28;
// Hard ceiling even with the override flag.
inline constexpr int kMaxTableDimOverride = 34;

// Throws DimensionError unless 1 <= d <= 63.
void check_vertex_dim(int d);
// Throws GuardError unless 1 <= d <= 28 (or <= 34 with allow_large).
void check_table_dim(int d, bool allow_large);

constexpr Word low_mask(int d) { return d >= 64 ? ~Word{0} : (Word{1} << d) - 1; }

class Vertex {
public:
    constexpr Vertex() = default;
    Vertex(int dim, Word bits);

    static Vertex parse(std::string_view text);
    static Vertex zero(int dim) { return Vertex(dim, 0); }

    int dim() const { return dim_; }
    Word bits() const { return bits_; }
    // 1-based coordinate access.
    bool coord(int i) const { return (bits_ >> (i - 1)) & 1U; }
    std::string str() const;

    friend auto operator<=>(const Vertex&, const Vertex&) = default;

private:
    int dim_ = 0;
    Word bits_ = 0;
};

std::string format_word(Word bits, int dim);

int distance(Vertex u, Vertex v);
inline int word_distance(Word u, Word v) { return __builtin_popcountll(u ^ v); }
int weight(Vertex v);
// The d neighbours of v, flipping coordinate 1 first.
std::vector<Vertex> neighbors(Vertex v);

// A finite set of equal-dimension words, kept sorted by numeric value.
class WordSet {
public:
    WordSet() = default;
    explicit WordSet(int dim);
    WordSet(int dim, std::vector<Word> words);

    static WordSet from_vertices(int dim, std::span<const Vertex> vertices);
    static WordSet full(int dim);

    int dim() const { return dim_; }
    std::size_t size() const { return words_.size(); }
    bool empty() const { return words_.empty(); }
    bool contains(Word w) const;
    bool contains(Vertex v) const { return v.dim() == dim_ && contains(v.bits()); }

    std::span<const Word> words() const { return words_; }
    auto begin() const { return words_.begin(); }
    auto end() const { return words_.end(); }
    std::vector<Vertex> vertices() const;

    void insert(Word w);
    void erase(Word w);

    friend bool operator==(const WordSet&, const WordSet&) = default;

private:
    int dim_ = 0;
    std::vector<Word> words_;
};

WordSet set_union(const WordSet& a, const WordSet& b);
WordSet set_difference(const WordSet& a, const WordSet& b);
WordSet set_intersection(const WordSet& a, const WordSet& b);

// Bijection on coordinates. images[i] is the (1-based) target of coordinate i+1.
class CoordPermutation {
public:
    explicit CoordPermutation(std::vector<int> images);

    static CoordPermutation identity(int dim);
    static CoordPermutation transposition(int dim, int a, int b);

    int dim() const { return static_cast<int>(images_.size()); }
    int image(int coord) const { return images_.at(coord - 1); }
    // Apply this, then next.
    CoordPermutation then(const CoordPermutation& next) const;
    Word apply(Word w) const;

private:
    std::vector<int> images_;
};

WordSet xor_translate(const WordSet& s, Vertex mask);
WordSet permute_coords(const WordSet& s, const CoordPermutation& p);

// Vertex-set file: one vertex per line, '#' comments, blank lines ignored.
// With no explicit dimension it is taken from the first vertex.
WordSet read_vertex_set(std::istream& in, std::optional<int> dim = std::nullopt);
WordSet read_vertex_set_file(const std::string& path, std::optional<int> dim = std::nullopt);
void write_vertex_set(std::ostream& out, const WordSet& s);
void write_vertex_set_file(const std::string& path, const WordSet& s);

}  // namespace hyperboot
