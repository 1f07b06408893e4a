#include "hyperboot/vertex.hpp"

#include "hyperboot/errors.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <iterator>
#include <ostream>

namespace hyperboot {

void check_vertex_dim(int d)
{
    if (d < 1 || d > kMaxVertexDim)
        throw DimensionError("dimension " + std::to_string(d) + " outside [1, 63]");
}

void check_table_dim(int d, bool allow_large)
{
    check_vertex_dim(d);
    const int cap = allow_large ? kMaxTableDimOverride : kMaxTableDim;
    if (d > cap)
        throw GuardError("dimension " + std::to_string(d) + " exceeds the state-table cap of " +
                         std::to_string(cap) + (allow_large ? "" : " (override with --allow-large)"));
}

Vertex::Vertex(int dim, Word bits) : dim_(dim), bits_(bits)
{
    if (dim < 0 || dim > kMaxVertexDim)
        throw DimensionError("vertex dimension " + std::to_string(dim) + " outside [0, 63]");
    if ((bits & ~low_mask(dim)) != 0)
        throw DimensionError("vertex has bits above dimension " + std::to_string(dim));
}

Vertex Vertex::parse(std::string_view text)
{
    if (text.size() > static_cast<std::size_t>(kMaxVertexDim))
        throw FormatError("vertex text longer than 63 characters");
    Word bits = 0;
    for (std::size_t i = 0; i < text.size(); ++i) {
        if (text[i] == '1')
            bits |= Word{1} << i;
        else if (text[i] != '0')
            throw FormatError("invalid character '" + std::string(1, text[i]) + "' in vertex \"" +
                              std::string(text) + "\"");
    }
    return Vertex(static_cast<int>(text.size()), bits);
}

std::string format_word(Word bits, int dim)
{
    std::string s(static_cast<std::size_t>(dim), '0');
    for (int i = 0; i < dim; ++i)
        if ((bits >> i) & 1U) s[static_cast<std::size_t>(i)] = '1';
    return s;
}

std::string Vertex::str() const { return format_word(bits_, dim_); }

int distance(Vertex u, Vertex v)
{
    if (u.dim() != v.dim())
        throw DimensionError("distance between vertices of dimension " + std::to_string(u.dim()) +
                             " and " + std::to_string(v.dim()));
    return word_distance(u.bits(), v.bits());
}

int weight(Vertex v) { return __builtin_popcountll(v.bits()); }

std::vector<Vertex> neighbors(Vertex v)
{
    std::vector<Vertex> out;
    out.reserve(static_cast<std::size_t>(v.dim()));
    for (int i = 0; i < v.dim(); ++i)
        out.emplace_back(v.dim(), v.bits() ^ (Word{1} << i));
    return out;
}

// ---------------------------------------------------------------- WordSet

WordSet::WordSet(int dim) : dim_(dim)
{
    if (dim < 0 || dim > kMaxVertexDim)
        throw DimensionError("word-set dimension " + std::to_string(dim) + " outside [0, 63]");
}

WordSet::WordSet(int dim, std::vector<Word> words) : WordSet(dim)
{
    const Word mask = low_mask(dim);
    for (Word w : words)
        if ((w & ~mask) != 0)
            throw DimensionError("word has bits above dimension " + std::to_string(dim));
    if (!std::is_sorted(words.begin(), words.end()))
        std::sort(words.begin(), words.end());
    words.erase(std::unique(words.begin(), words.end()), words.end());
    words_ = std::move(words);
}

WordSet WordSet::from_vertices(int dim, std::span<const Vertex> vertices)
{
    std::vector<Word> words;
    words.reserve(vertices.size());
    for (const Vertex& v : vertices) {
        if (v.dim() != dim)
            throw DimensionError("vertex " + v.str() + " does not have dimension " + std::to_string(dim));
        words.push_back(v.bits());
    }
    return WordSet(dim, std::move(words));
}

WordSet WordSet::full(int dim)
{
    check_table_dim(dim, true);
    std::vector<Word> words(std::size_t{1} << dim);
    for (std::size_t i = 0; i < words.size(); ++i) words[i] = i;
    return WordSet(dim, std::move(words));
}

bool WordSet::contains(Word w) const { return std::binary_search(words_.begin(), words_.end(), w); }

std::vector<Vertex> WordSet::vertices() const
{
    std::vector<Vertex> out;
    out.reserve(words_.size());
    for (Word w : words_) out.emplace_back(dim_, w);
    return out;
}

void WordSet::insert(Word w)
{
    if ((w & ~low_mask(dim_)) != 0)
        throw DimensionError("word has bits above dimension " + std::to_string(dim_));
    auto it = std::lower_bound(words_.begin(), words_.end(), w);
    if (it == words_.end() || *it != w) words_.insert(it, w);
}

void WordSet::erase(Word w)
{
    auto it = std::lower_bound(words_.begin(), words_.end(), w);
    if (it != words_.end() && *it == w) words_.erase(it);
}

namespace {

void require_same_dim(const WordSet& a, const WordSet& b, const char* op)
{
    if (a.dim() != b.dim())
        throw DimensionError(std::string(op) + " of word sets with dimensions " + std::to_string(a.dim()) +
                             " and " + std::to_string(b.dim()));
}

}  // namespace

WordSet set_union(const WordSet& a, const WordSet& b)
{
    require_same_dim(a, b, "union");
    std::vector<Word> out;
    out.reserve(a.size() + b.size());
    std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return WordSet(a.dim(), std::move(out));
}

WordSet set_difference(const WordSet& a, const WordSet& b)
{
    require_same_dim(a, b, "difference");
    std::vector<Word> out;
    std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return WordSet(a.dim(), std::move(out));
}

WordSet set_intersection(const WordSet& a, const WordSet& b)
{
    require_same_dim(a, b, "intersection");
    std::vector<Word> out;
    std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return WordSet(a.dim(), std::move(out));
}

// ------------------------------------------------------- CoordPermutation

CoordPermutation::CoordPermutation(std::vector<int> images) : images_(std::move(images))
{
    const int d = dim();
    if (d > kMaxVertexDim) throw DimensionError("permutation on more than 63 coordinates");
    std::vector<bool> hit(static_cast<std::size_t>(d), false);
    for (int img : images_) {
        if (img < 1 || img > d || hit[static_cast<std::size_t>(img - 1)])
            throw PreconditionError("coordinate mapping is not a bijection on {1.." + std::to_string(d) + "}");
        hit[static_cast<std::size_t>(img - 1)] = true;
    }
}

CoordPermutation CoordPermutation::identity(int dim)
{
    std::vector<int> images(static_cast<std::size_t>(dim));
    for (int i = 0; i < dim; ++i) images[static_cast<std::size_t>(i)] = i + 1;
    return CoordPermutation(std::move(images));
}

CoordPermutation CoordPermutation::transposition(int dim, int a, int b)
{
    std::vector<int> images(static_cast<std::size_t>(dim));
    for (int i = 0; i < dim; ++i) images[static_cast<std::size_t>(i)] = i + 1;
    if (a < 1 || a > dim || b < 1 || b > dim)
        throw PreconditionError("transposition coordinate out of range");
    std::swap(images[static_cast<std::size_t>(a - 1)], images[static_cast<std::size_t>(b - 1)]);
    return CoordPermutation(std::move(images));
}

CoordPermutation CoordPermutation::then(const CoordPermutation& next) const
{
    if (next.dim() != dim()) throw DimensionError("composing permutations of different dimensions");
    std::vector<int> images(images_.size());
    for (std::size_t i = 0; i < images_.size(); ++i) images[i] = next.image(images_[i]);
    return CoordPermutation(std::move(images));
}

Word CoordPermutation::apply(Word w) const
{
    Word out = 0;
    for (std::size_t i = 0; i < images_.size(); ++i)
        if ((w >> i) & 1U) out |= Word{1} << (images_[i] - 1);
    return out;
}

WordSet xor_translate(const WordSet& s, Vertex mask)
{
    if (mask.dim() != s.dim())
        throw DimensionError("translation mask dimension " + std::to_string(mask.dim()) +
                             " differs from set dimension " + std::to_string(s.dim()));
    std::vector<Word> out;
    out.reserve(s.size());
    for (Word w : s) out.push_back(w ^ mask.bits());
    return WordSet(s.dim(), std::move(out));
}

WordSet permute_coords(const WordSet& s, const CoordPermutation& p)
{
    if (p.dim() != s.dim())
        throw DimensionError("permutation dimension " + std::to_string(p.dim()) + " differs from set dimension " +
                             std::to_string(s.dim()));
    std::vector<Word> out;
    out.reserve(s.size());
    for (Word w : s) out.push_back(p.apply(w));
    return WordSet(s.dim(), std::move(out));
}

// ------------------------------------------------------------------ files

WordSet read_vertex_set(std::istream& in, std::optional<int> dim)
{
    std::vector<Word> words;
    std::optional<int> seen = dim;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos) continue;
        auto last = line.find_last_not_of(" \t\r");
        const std::string_view text = std::string_view(line).substr(first, last - first + 1);
        Vertex v;
        try {
            v = Vertex::parse(text);
        } catch (const Error& e) {
            throw FormatError("line " + std::to_string(lineno) + ": " + e.what());
        }
        if (!seen) seen = v.dim();
        if (v.dim() != *seen)
            throw FormatError("line " + std::to_string(lineno) + ": vertex " + v.str() + " has dimension " +
                              std::to_string(v.dim()) + ", expected " + std::to_string(*seen));
        words.push_back(v.bits());
    }
    if (!seen) throw FormatError("empty vertex-set file and no dimension given");
    return WordSet(*seen, std::move(words));
}

WordSet read_vertex_set_file(const std::string& path, std::optional<int> dim)
{
    std::ifstream in(path);
    if (!in) throw FormatError("cannot open " + path);
    return read_vertex_set(in, dim);
}

void write_vertex_set(std::ostream& out, const WordSet& s)
{
    for (Word w : s) out << format_word(w, s.dim()) << '\n';
}

void write_vertex_set_file(const std::string& path, const WordSet& s)
{
    std::ofstream out(path);
    if (!out) throw FormatError("cannot write " + path);
    write_vertex_set(out, s);
}

}  // namespace hyperboot
