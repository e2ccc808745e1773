#pragma once

// Rank-based scoring of solver results: per-instance ranks with tie
// averaging, mean ranks, finalist selection and the final ranking.

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "inrc2/rational.hpp"

namespace inrc2 {

using Score = std::optional<std::int64_t>;  // nothing = missing or infeasible

struct ScoreMatrix {
    std::vector<std::string> participants;
    std::vector<std::vector<Score>> values;  // values[participant][instance]

    int participant_count() const { return static_cast<int>(values.size()); }
    int instance_count() const { return values.empty() ? 0 : static_cast<int>(values[0].size()); }
};

using RankMatrix = std::vector<std::vector<Rational>>;

class AdjudicationError : public std::runtime_error {
public:
    enum class Kind { ShapeMismatch, BadTable };

    AdjudicationError(Kind kind, const std::string& message) : std::runtime_error(message), kind_(kind) {}
    Kind kind() const { return kind_; }

private:
    Kind kind_;
};

// Stand-in for missing results of one instance: one more than the worst
// present score.
std::int64_t penalty_value(const ScoreMatrix& scores, int instance);

RankMatrix compute_ranks(const ScoreMatrix& scores);
std::vector<Rational> mean_ranks(const RankMatrix& ranks);

// The `quota` lowest means plus everyone tied with the last of them,
// ordered by (mean, index).
std::vector<int> select_finalists(const std::vector<Rational>& means, int quota = 5);

struct FinalRanking {
    std::vector<Rational> means;
    std::vector<int> order;  // by (mean, index)
    std::vector<int> leaders;  // everyone sharing the lowest mean

    bool decided() const { return leaders.size() == 1; }
};

// Ranks every trial separately and averages over all trials and instances.
FinalRanking final_ranking(const std::vector<ScoreMatrix>& trials);

// "name,v1,v2,..." per line; an empty cell is a missing result; '#' starts
// a comment line.
ScoreMatrix parse_score_table(const std::string& text);

}  // namespace inrc2
