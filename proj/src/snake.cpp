#include "hyperboot/snake.hpp"

#include "hyperboot/errors.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

namespace hyperboot {

SnakePath::SnakePath(int k, int dim, std::vector<Word> sites) : k_(k), dim_(dim), sites_(std::move(sites))
{
    if (k < 1) throw PreconditionError("spread k must be at least 1");
    check_vertex_dim(dim);
    if (sites_.empty()) throw PreconditionError("a snake needs at least one site");
    for (Word w : sites_)
        if ((w & ~low_mask(dim)) != 0) throw DimensionError("snake site has bits above dimension " + std::to_string(dim));
}

SnakePath SnakePath::from_vertices(int k, std::span<const Vertex> sites)
{
    if (sites.empty()) throw PreconditionError("a snake needs at least one site");
    std::vector<Word> words;
    words.reserve(sites.size());
    for (const Vertex& v : sites) {
        if (v.dim() != sites.front().dim()) throw DimensionError("snake sites have mixed dimensions");
        words.push_back(v.bits());
    }
    return SnakePath(k, sites.front().dim(), std::move(words));
}

std::string SnakeViolation::describe() const
{
    const std::string pair = "(" + std::to_string(first) + ", " + std::to_string(second) + ")";
    switch (kind) {
    case Kind::NotAdjacent:
        return "sites " + pair + " are consecutive but at distance " + std::to_string(distance);
    case Kind::Repeated: return "sites " + pair + " coincide";
    case Kind::Spread:
        return "spread violated at pair " + pair + ": distance " + std::to_string(distance);
    }
    return "unknown violation";
}

namespace {

std::optional<SnakeViolation> verify_words(std::span<const Word> s, int k)
{
    const int n = static_cast<int>(s.size());
    for (int t = 1; t < n; ++t) {
        const int dist = word_distance(s[t - 1], s[t]);
        if (dist != 1) return SnakeViolation{SnakeViolation::Kind::NotAdjacent, t - 1, t, dist};
    }
    for (int t = 0; t < n; ++t)
        for (int u = t + 1; u < n; ++u)
            if (s[t] == s[u]) return SnakeViolation{SnakeViolation::Kind::Repeated, t, u, 0};
    for (int t = 0; t < n; ++t)
        for (int u = t + k; u < n; ++u) {
            const int dist = word_distance(s[t], s[u]);
            if (dist < k) return SnakeViolation{SnakeViolation::Kind::Spread, t, u, dist};
        }
    return std::nullopt;
}

}  // namespace

std::optional<SnakeViolation> verify_snake(std::span<const Vertex> sites, int k)
{
    if (k < 1) throw PreconditionError("spread k must be at least 1");
    if (sites.empty()) throw PreconditionError("cannot verify an empty site sequence");
    std::vector<Word> words;
    for (const Vertex& v : sites) {
        if (v.dim() != sites.front().dim()) throw DimensionError("snake sites have mixed dimensions");
        words.push_back(v.bits());
    }
    return verify_words(words, k);
}

std::optional<SnakeViolation> verify_snake(const SnakePath& path) { return verify_words(path.sites(), path.k()); }

std::optional<std::pair<int, int>> check_local_isometry(const SnakePath& path)
{
    if (path.length() <= path.k())
        throw PreconditionError("local isometry needs length > k (length " + std::to_string(path.length()) +
                                ", k " + std::to_string(path.k()) + ")");
    const auto s = path.sites();
    const int n = static_cast<int>(s.size());
    for (int t = 0; t < n; ++t)
        for (int u = t + 1; u < n && u - t <= path.k(); ++u)
            if (word_distance(s[t], s[u]) != u - t) return std::pair{t, u};
    return std::nullopt;
}

SnakePath xor_translate(const SnakePath& path, Vertex mask)
{
    if (mask.dim() != path.dim()) throw DimensionError("translation mask dimension differs from snake dimension");
    std::vector<Word> out(path.sites().begin(), path.sites().end());
    for (Word& w : out) w ^= mask.bits();
    return SnakePath(path.k(), path.dim(), std::move(out));
}

SnakePath permute_coords(const SnakePath& path, const CoordPermutation& p)
{
    if (p.dim() != path.dim()) throw DimensionError("permutation dimension differs from snake dimension");
    std::vector<Word> out;
    out.reserve(path.sites().size());
    for (Word w : path.sites()) out.push_back(p.apply(w));
    return SnakePath(path.k(), path.dim(), std::move(out));
}

SnakePath normalize_end_to_zero(const SnakePath& path)
{
    return xor_translate(path, path.site(static_cast<std::size_t>(path.length())));
}

namespace {

// Iterative DFS over k-snakes rooted at the zero vertex. Candidates are
// tried in increasing numeric order, so paths are visited in lexicographic
// order of their site sequences.
class SnakeDfs {
public:
    SnakeDfs(int d, int k, bool canonical) : d_(d), k_(k), canonical_(canonical)
    {
        const std::size_t n = std::size_t{1} << d;
        visited_.assign(n, 0);
        blocked_.assign(n, 0);
        for (Word w = 0; w < n; ++w)
            if (__builtin_popcountll(w) < k) ball_.push_back(w);
    }

    // visit(path, coords_used) is called for every path including the root;
    // returning false stops the search.  attempt() is called before every
    // extension attempt; returning false stops the search.
    template <class Visit, class Attempt>
    bool run(Visit&& visit, Attempt&& attempt)
    {
        push_site(0);
        if (!visit(path_, next_coord_)) return false;
        frames_.push_back(make_frame());
        while (!frames_.empty()) {
            Frame& f = frames_.back();
            if (f.pos == f.count) {
                frames_.pop_back();
                pop_site();
                continue;
            }
            const Word v = f.cand[f.pos++];
            if (!attempt()) return false;
            if (visited_[v] || blocked_[v]) continue;
            push_site(v);
            if (!visit(path_, next_coord_)) return false;
            frames_.push_back(make_frame());
        }
        return true;
    }

private:
    struct Frame {
        std::array<Word, 64> cand;
        int count = 0;
        int pos = 0;
    };

    int d_;
    int k_;
    bool canonical_;
    int next_coord_ = 0;
    std::vector<Word> path_;
    std::vector<bool> opened_coord_;
    std::vector<std::uint8_t> visited_;
    std::vector<std::uint32_t> blocked_;
    std::vector<Word> ball_;
    std::vector<Frame> frames_;

    Frame make_frame() const
    {
        Frame f;
        const Word cur = path_.back();
        const int limit = canonical_ ? std::min(d_, next_coord_ + 1) : d_;
        for (int i = 0; i < limit; ++i) f.cand[static_cast<std::size_t>(f.count++)] = cur ^ (Word{1} << i);
        std::sort(f.cand.begin(), f.cand.begin() + f.count);
        return f;
    }

    void block(Word site, int delta)
    {
        for (Word off : ball_) blocked_[site ^ off] += static_cast<std::uint32_t>(delta);
    }

    // Site index n may not come within distance < k of any site t <= n - k.
    // After pushing index n the table must cover sites 0..n+1-k.
    void push_site(Word v)
    {
        const int n = static_cast<int>(path_.size());
        bool opened = false;
        if (n > 0) {
            const int c = __builtin_ctzll(v ^ path_.back());
            if (c == next_coord_) {
                ++next_coord_;
                opened = true;
            }
        }
        path_.push_back(v);
        opened_coord_.push_back(opened);
        visited_[v] = 1;
        if (const int idx = n + 1 - k_; idx >= 0) block(path_[static_cast<std::size_t>(idx)], +1);
    }

    void pop_site()
    {
        const int n = static_cast<int>(path_.size()) - 1;
        if (const int idx = n + 1 - k_; idx >= 0) block(path_[static_cast<std::size_t>(idx)], -1);
        visited_[path_.back()] = 0;
        if (opened_coord_.back()) --next_coord_;
        opened_coord_.pop_back();
        path_.pop_back();
    }
};

void check_search_guard(int d, int k, bool exhaustive, const SnakeSearchOptions& opts)
{
    if (k < 1) throw PreconditionError("spread k must be at least 1");
    check_table_dim(d, opts.allow_large);
    if (exhaustive && d > opts.max_exhaustive_dim && !opts.allow_large)
        throw GuardError("exhaustive snake search refused for d=" + std::to_string(d) + " (guard d <= " +
                         std::to_string(opts.max_exhaustive_dim) + "; use budget mode or override)");
}

}  // namespace

SnakeSearchResult search_longest(int d, int k, const SnakeSearchOptions& options)
{
    const bool exhaustive = options.mode == SnakeSearchOptions::Mode::Exhaustive;
    check_search_guard(d, k, exhaustive, options);

    std::vector<Word> best;
    std::uint64_t nodes = 0;
    bool stopped = false;
    SnakeDfs dfs(d, k, options.canonical);
    dfs.run(
        [&](const std::vector<Word>& path, int) {
            if (path.size() > best.size()) best = path;
            return true;
        },
        [&] {
            if (!exhaustive && nodes >= options.node_limit) {
                stopped = true;
                return false;
            }
            ++nodes;
            return true;
        });
    return SnakeSearchResult{SnakePath(k, d, std::move(best)), !stopped, nodes};
}

std::vector<std::vector<std::uint64_t>> count_snakes(int d, int k, bool canonical)
{
    check_search_guard(d, k, true, SnakeSearchOptions{});
    std::vector<std::vector<std::uint64_t>> counts;
    SnakeDfs dfs(d, k, canonical);
    dfs.run(
        [&](const std::vector<Word>& path, int used) {
            const std::size_t len = path.size() - 1;
            if (counts.size() <= len) counts.resize(len + 1, std::vector<std::uint64_t>(static_cast<std::size_t>(d) + 1, 0));
            ++counts[len][static_cast<std::size_t>(used)];
            return true;
        },
        [] { return true; });
    return counts;
}

double reference_lower_bound(int d)
{
    if (d < 3) throw PreconditionError("reference bound defined for d >= 3");
    const double lg = std::log2(static_cast<double>(d));
    return std::ldexp(1.0, d) / (static_cast<double>(d) * lg * lg);
}

SnakePath read_snake(std::istream& in)
{
    std::string line;
    int k = -1;
    int d = -1;
    std::vector<Word> sites;
    int lineno = 0;
    bool header = false;
    while (std::getline(in, line)) {
        ++lineno;
        if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos) continue;
        auto last = line.find_last_not_of(" \t\r");
        const std::string text = line.substr(first, last - first + 1);
        if (!header) {
            std::istringstream hs(text);
            std::string kf, df, extra;
            hs >> kf >> df;
            if (kf.rfind("k=", 0) != 0 || df.rfind("d=", 0) != 0 || (hs >> extra))
                throw FormatError("line " + std::to_string(lineno) + ": expected header \"k=<int> d=<int>\"");
            try {
                k = std::stoi(kf.substr(2));
                d = std::stoi(df.substr(2));
            } catch (const std::exception&) {
                throw FormatError("line " + std::to_string(lineno) + ": malformed header");
            }
            header = true;
            continue;
        }
        Vertex v;
        try {
            v = Vertex::parse(text);
        } catch (const Error& e) {
            throw FormatError("line " + std::to_string(lineno) + ": " + e.what());
        }
        if (v.dim() != d)
            throw FormatError("line " + std::to_string(lineno) + ": vertex has dimension " + std::to_string(v.dim()) +
                              ", header says " + std::to_string(d));
        sites.push_back(v.bits());
    }
    if (!header) throw FormatError("snake file has no header");
    if (sites.empty()) throw FormatError("snake file has no sites");
    return SnakePath(k, d, std::move(sites));
}

SnakePath read_snake_file(const std::string& path)
{
    std::ifstream in(path);
    if (!in) throw FormatError("cannot open " + path);
    return read_snake(in);
}

void write_snake(std::ostream& out, const SnakePath& path)
{
    out << "k=" << path.k() << " d=" << path.dim() << '\n';
    for (Word w : path.sites()) out << format_word(w, path.dim()) << '\n';
}

void write_snake_file(const std::string& path, const SnakePath& snake)
{
    std::ofstream out(path);
    if (!out) throw FormatError("cannot write " + path);
    write_snake(out, snake);
}

}  // namespace hyperboot
