#include "hyperboot/engine.hpp"

#include "hyperboot/errors.hpp"

#include <algorithm>

namespace hyperboot {

InfectionState::InfectionState(int d, int r, const WordSet& initial, bool allow_large)
    : dim_(d), threshold_(r)
{
    check_table_dim(d, allow_large);
    if (r < 1) throw PreconditionError("threshold r must be at least 1, got " + std::to_string(r));
    if (initial.dim() != d)
        throw DimensionError("initial set has dimension " + std::to_string(initial.dim()) + ", expected " +
                             std::to_string(d));
    const std::size_t n = std::size_t{1} << d;
    const std::size_t words = (n + 63) / 64;
    infected_.assign(words, 0);
    queued_.assign(words, 0);
    time_of_.assign(n, kNever);
    frontier_.assign(initial.begin(), initial.end());
    for (Word v : initial) {
        mark(infected_, v);
        time_of_[v] = 0;
    }
    infected_count_ = initial.size();
}

WordSet InfectionState::infected_set() const
{
    std::vector<Word> out;
    out.reserve(infected_count_);
    for (Word v = 0; v < time_of_.size(); ++v)
        if (infected(v)) out.push_back(v);
    return WordSet(dim_, std::move(out));
}

std::span<const Word> InfectionState::advance()
{
    // Only uninfected neighbours of last round's infections can have gained
    // an infected neighbour, so those are the only candidates.
    candidates_.clear();
    for (Word f : frontier_) {
        for (int i = 0; i < dim_; ++i) {
            const Word u = f ^ (Word{1} << i);
            if (!infected(u) && !test(queued_, u)) {
                mark(queued_, u);
                candidates_.push_back(u);
            }
        }
    }
    std::vector<Word> fresh;
    for (Word u : candidates_) {
        unmark(queued_, u);
        int count = 0;
        for (int i = 0; i < dim_ && count < threshold_; ++i)
            if (infected(u ^ (Word{1} << i))) ++count;
        if (count >= threshold_) fresh.push_back(u);
    }
    if (fresh.empty()) {
        frontier_.clear();
        return frontier_;
    }
    ++clock_;
    std::sort(fresh.begin(), fresh.end());
    for (Word u : fresh) {
        mark(infected_, u);
        time_of_[u] = clock_;
    }
    infected_count_ += fresh.size();
    frontier_ = std::move(fresh);
    return frontier_;
}

WordSet InfectionState::step()
{
    auto fresh = advance();
    return WordSet(dim_, std::vector<Word>(fresh.begin(), fresh.end()));
}

WordSet Outcome::final_infected() const
{
    std::vector<Word> out;
    out.reserve(infected_count);
    for (Word v = 0; v < times.size(); ++v)
        if (times[v] != kNever) out.push_back(v);
    return WordSet(d, std::move(out));
}

Outcome run(InfectionState& state)
{
    while (!state.advance().empty()) {
    }
    Outcome out;
    out.d = state.dim();
    out.r = state.threshold();
    out.total_time = state.clock();
    out.infected_count = state.infected_count();
    out.percolated = state.infected_count() == state.vertex_count();
    out.times.assign(state.times().begin(), state.times().end());
    return out;
}

Outcome run(int d, int r, const WordSet& initial, bool allow_large)
{
    InfectionState state(d, r, initial, allow_large);
    return run(state);
}

bool is_stable(int d, int r, const WordSet& set, bool allow_large)
{
    InfectionState state(d, r, set, allow_large);
    return state.advance().empty();
}

std::vector<Word> early_neighbour_violations(const Outcome& outcome)
{
    std::vector<Word> bad;
    for (Word v = 0; v < outcome.times.size(); ++v) {
        const std::int32_t tv = outcome.times[v];
        if (tv == kNever || tv == 0) continue;
        int early = 0;
        for (int i = 0; i < outcome.d; ++i) {
            const std::int32_t tu = outcome.times[v ^ (Word{1} << i)];
            if (tu != kNever && tv - tu > 1) ++early;
        }
        if (early > outcome.r - 1) bad.push_back(v);
    }
    return bad;
}

}  // namespace hyperboot
