#pragma once

// Baseline single-week solver: greedy construction followed by simulated
// annealing. Assignment and weekend counters, which are only charged at the
// end of the horizon, are steered by a per-week quota surrogate.

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "inrc2/evaluation.hpp"
#include "inrc2/model.hpp"
#include "inrc2/rational.hpp"

namespace inrc2 {

struct SolverConfig {
    double time_budget = 10.0;  // seconds; ignored when max_iterations is set
    std::optional<std::int64_t> max_iterations;
    std::uint64_t seed = 0;
    Weights weights;
    int s6_effective = 20;
    int s7_effective = 30;
};

// Per-nurse targets for the week being solved.
struct CustomState {
    int week_index = 0;
    std::vector<Rational> assignment_target;  // shifts to work this week
    std::vector<Rational> weekend_budget;     // working weekends affordable this week

    friend bool operator==(const CustomState&, const CustomState&) = default;
};

class SolverError : public std::runtime_error {
public:
    enum class Kind { ConstructionStuck, Infeasible, BadCustomState };

    SolverError(Kind kind, const std::string& message, Solution partial = {})
        : std::runtime_error(message), kind_(kind), partial_(std::move(partial)) {}
    Kind kind() const { return kind_; }
    const Solution& partial() const { return partial_; }

private:
    Kind kind_;
    Solution partial_;
};

// Spreads the distance to the middle of each nurse's total-assignment range,
// and the remaining weekend allowance, evenly over the weeks left.
CustomState counter_budget(const Scenario& sc, const History& history, int week_index);

std::string write_custom(const CustomState& state, const Scenario& sc);
CustomState parse_custom(const std::string& text, const Scenario& sc);

// Covers every minimum requirement without double bookings, forbidden
// successions or missing skills. Throws ConstructionStuck with the partial
// roster when a requirement cannot be placed.
Solution greedy_construct(const Scenario& sc, const WeekData& week, const History& history, const SolverConfig& cfg,
                          const CustomState& budget);

// Returns the best roster visited, compared on (hard violations, cost).
Solution local_search(const Scenario& sc, const WeekData& week, const History& history, const Solution& start,
                      const SolverConfig& cfg, const CustomState& budget);

struct WeekSolution {
    Solution solution;
    CustomState custom_out;
    bool feasible = false;
};

WeekSolution solve_week(const Scenario& sc, const History& history, const WeekData& week, const SolverConfig& cfg,
                        const std::optional<CustomState>& custom_in = std::nullopt);

}  // namespace inrc2
