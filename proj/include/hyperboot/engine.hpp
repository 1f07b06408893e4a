#pragma once

// Synchronous r-neighbour bootstrap percolation on {0,1}^d.

#include "hyperboot/vertex.hpp"

#include <cstdint>
#include <span>
#include <vector>

namespace hyperboot {

inline constexpr std::int32_t kNever = -1;

class InfectionState {
public:
    InfectionState(int d, int r, const WordSet& initial, bool allow_large = false);

    int dim() const { return dim_; }
    int threshold() const { return threshold_; }
    int clock() const { return clock_; }
    std::size_t vertex_count() const { return time_of_.size(); }
    std::size_t infected_count() const { return infected_count_; }

    bool infected(Word v) const { return (infected_[v >> 6] >> (v & 63)) & 1U; }
    std::int32_t time_of(Word v) const { return time_of_[v]; }
    std::span<const std::int32_t> times() const { return time_of_; }
    std::span<const Word> infected_bitmap() const { return infected_; }
    WordSet infected_set() const;

    // One synchronous round. Returns the newly infected vertices; an empty
    // result is the fixpoint and leaves the clock unchanged.
    WordSet step();
    // Same as step() but without materialising a WordSet; the span is valid
    // until the next call.
    std::span<const Word> advance();

private:
    int dim_;
    int threshold_;
    int clock_ = 0;
    std::size_t infected_count_ = 0;
    std::vector<Word> infected_;
    std::vector<Word> queued_;
    std::vector<std::int32_t> time_of_;
    std::vector<Word> frontier_;
    std::vector<Word> candidates_;

    void mark(std::vector<Word>& bits, Word v) { bits[v >> 6] |= Word{1} << (v & 63); }
    void unmark(std::vector<Word>& bits, Word v) { bits[v >> 6] &= ~(Word{1} << (v & 63)); }
    static bool test(const std::vector<Word>& bits, Word v) { return (bits[v >> 6] >> (v & 63)) & 1U; }
};

struct Outcome {
    int d = 0;
    int r = 0;
    bool percolated = false;
    // Time of the last infection; 0 when nothing new was ever infected.
    int total_time = 0;
    std::size_t infected_count = 0;
    std::vector<std::int32_t> times;

    WordSet final_infected() const;
};

Outcome run(InfectionState& state);
Outcome run(int d, int r, const WordSet& initial, bool allow_large = false);

bool is_stable(int d, int r, const WordSet& set, bool allow_large = false);

// Vertices not initially infected that have at least r neighbours infected
// more than one round before them. Empty for every valid run.
std::vector<Word> early_neighbour_violations(const Outcome& outcome);

}  // namespace hyperboot
