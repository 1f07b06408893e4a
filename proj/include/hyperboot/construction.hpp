#pragma once

// The maximal-time witness for 3-neighbour percolation in odd dimension
// d >= 15: a long 3-snake in a codimension-9 subcube that becomes infected
// one site per round, followed by a percolating gadget near its end.
//
// Layout of a site of {0,1}^d: coordinates 1..9 are the gadget coordinates,
// coordinates 10..d carry the snake (dimension d'' = d - 9). d' = d - 3.

#include "hyperboot/engine.hpp"
#include "hyperboot/snake.hpp"
#include "hyperboot/vertex.hpp"

#include <array>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace hyperboot {

// Subcube expressions for the parts of the initial set. Bindings: d, d', d''
// and the snake sets S0, S_T1 (= S_{T-1}), S1CLASS, S2CLASS, S3CLASS.
inline constexpr std::string_view kSeedExpr = "[0]^9 S0";
inline constexpr std::string_view kI0Expr =
    "[0]^3 ~([0][1]) [0]^4 S1CLASS | [0]^5 ~([0][1]) [0]^2 S2CLASS | [0]^7 ~([0][1]) S3CLASS";
inline constexpr std::string_view kJ1Expr = "[1,1][*]^(d'+1)";
inline constexpr std::string_view kJ2Expr = "~([0][1])[1][0]^d'";
inline constexpr std::string_view kJ3Expr = "~([0][1])[0]~([1,1][0,0]^((d'-2)/2))";
// Additional bindings J1, J2, J3.
inline constexpr std::string_view kClaim2Expr = "J1 | J2 | J3 | [0]^9 S_T1";

struct ConstructionParams {
    int d;
    int d_prime;
    int d_dprime;

    // Throws PreconditionError unless d is odd and d >= 15.
    static ConstructionParams for_dimension(int d);
};

// Individual checks on a modified snake S of dimension m + 1 and length T.
struct ModifiedSnakeReport {
    bool is_3_snake = false;
    bool end_minus_3 = false;  // S_{T-3} = [1,0,1,0,1][0]^(m-4)
    bool end_minus_2 = false;  // S_{T-2} = [1,0,1][0]^(m-2)
    bool end_minus_1 = false;  // S_{T-1} = [1][0]^m
    bool end_zero = false;     // S_T = [0]^(m+1)
    bool heavy_body = false;   // |S_t| > 3 for t < T-3
    // Length is input length + 1; unset when no input length was supplied.
    std::optional<bool> length_relation;

    bool all() const
    {
        return is_3_snake && end_minus_3 && end_minus_2 && end_minus_1 && end_zero && heavy_body &&
               length_relation.value_or(true);
    }
};

ModifiedSnakeReport check_modified_snake(const SnakePath& s, std::optional<int> input_length = std::nullopt);

// Translates the input 3-snake to end at zero, moves its two pre-terminal
// sites onto coordinates {2} and {2,4}, then prefixes a 1-coordinate and
// appends the zero site.
SnakePath build_modified_snake(const SnakePath& input);

struct ConstructionParts {
    ConstructionParams params;
    SnakePath snake;
    Vertex seed;
    WordSet i0;
    WordSet j1;
    WordSet j2;
    WordSet j3;
    // Snake sites S_{T-i-3j} for i = 1, 2, 3 (dimension d'').
    std::array<WordSet, 3> residue_classes;

    int length() const { return snake.length(); }
    // seed | I0 | J1 | J2 | J3.
    WordSet initial_set() const;
    // [0]^9 S_t as a word of {0,1}^d.
    Word lifted_site(int t) const { return snake[static_cast<std::size_t>(t)] << 9; }
};

// Throws PreconditionError if d is invalid or the snake fails a condition.
ConstructionParts build_initial_config(const SnakePath& snake, int d);

struct AuditBullet {
    std::string name;
    bool passed = true;
    // Offending pair (or single site in `first`) when the bullet fails.
    std::optional<std::pair<Word, Word>> witness;
};

struct StructureReport {
    std::vector<AuditBullet> bullets;
    bool parts_disjoint = true;

    bool passed() const;
};

StructureReport audit_structure(const ConstructionParts& parts);

struct Claim1Verdict {
    bool passed = true;
    // Rounds t = 0.. compared against I | {[0]^9 S_t' : t' <= t}.
    int rounds_checked = 0;
    std::optional<int> failing_round;
    std::vector<Word> missing;
    std::vector<Word> parasites;
};

Claim1Verdict verify_claim1(const ConstructionParts& parts);

// Runs 3-neighbour dynamics from J1 | J2 | J3 | {[0]^9 S_{T-1}}.
Outcome verify_claim2(const ConstructionParts& parts);

struct WitnessResult {
    ConstructionParts parts;
    ModifiedSnakeReport snake_report;
    StructureReport audit;
    Claim1Verdict claim1;
    bool claim2 = false;
    Outcome outcome;

    // Percolates from I in at least T rounds.
    bool time_bound_holds() const { return outcome.percolated && outcome.total_time >= parts.length(); }
    bool passed() const
    {
        return snake_report.all() && audit.passed() && claim1.passed && claim2 && time_bound_holds();
    }
};

// End-to-end pipeline from a 3-snake of dimension d - 10.
WitnessResult lower_bound_witness(int d, const SnakePath& source_snake);

// [*]A: both extensions of every site by a new first coordinate.
WordSet double_config(const WordSet& a);

// Embeds cfg in the subcube [1]^(r-3)[*]^m and infects everything outside it.
WordSet pad_for_r(const WordSet& cfg, int r);

}  // namespace hyperboot
