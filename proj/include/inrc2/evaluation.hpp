#pragma once

// Constraint evaluation: hard feasibility (H1-H4), weekly soft costs
// (S1-S5) with history border data, end-of-horizon counters (S6-S7) and
// the history transition between weeks.

#include <array>
#include <span>
#include <stdexcept>
#include <vector>

#include "inrc2/model.hpp"

namespace inrc2 {

class EvaluationError : public std::runtime_error {
public:
    enum class Kind { InfeasiblePattern, WrongWeek, WeekMismatch, ScenarioMismatch, HorizonLength };

    EvaluationError(Kind kind, const std::string& message) : std::runtime_error(message), kind_(kind) {}
    Kind kind() const { return kind_; }

private:
    Kind kind_;
};

// One day of a nurse's week: off, or working a shift with a skill.
struct Slot {
    ShiftId shift = kNoShift;
    SkillId skill = -1;

    bool working() const { return shift != kNoShift; }
    friend bool operator==(const Slot&, const Slot&) = default;
};

using WeekPattern = std::array<Slot, kDaysPerWeek>;
using DayFlags = std::array<bool, kDaysPerWeek>;

enum class SeriesKind { Work, Off, SameShift };

// A consecutive-days rule: runs of member days must have a length within
// `bounds`. `carry_in` is the length of the member run that was still open
// at the end of the previous week.
struct SeriesSpec {
    SeriesKind kind = SeriesKind::Work;
    ShiftId shift = kNoShift;  // only for SameShift
    Interval bounds;
    int carry_in = 0;
};

struct SeriesViolation {
    int max_side = 0;  // days beyond the maximum
    int min_side = 0;  // days missing to reach the minimum

    int total() const { return max_side + min_side; }
    friend bool operator==(const SeriesViolation&, const SeriesViolation&) = default;
};

// Scores the runs of `member` days within one week. The run that continues
// the previous week only pays for the extra maximum excess; the run still
// open on Sunday pays no minimum-side units.
SeriesViolation score_series(const SeriesSpec& spec, const DayFlags& member);

DayFlags member_days(const WeekPattern& pattern, SeriesKind kind, ShiftId shift = kNoShift);

// Per-nurse weekly view. Throws EvaluationError::InfeasiblePattern when a
// nurse has two assignments on one day.
std::vector<WeekPattern> build_patterns(const Scenario& sc, const Solution& sol);

// Same, but keeps the smallest (shift, skill) assignment of a doubly-booked
// day so an H1-infeasible roster can still be scored.
std::vector<WeekPattern> build_patterns_lenient(const Scenario& sc, const Solution& sol);

// Shift-off requests indexed by (nurse, day).
class RequestTable {
public:
    RequestTable(const Scenario& sc, const WeekData& week);

    // True when working `shift` on `day` violates one of the nurse's requests.
    bool violated(NurseId nurse, int day, ShiftId shift) const;
    bool any(NurseId nurse, int day) const { return cell(nurse, day, 0) != 0; }

private:
    char cell(NurseId nurse, int day, int slot) const {
        return flags_[static_cast<std::size_t>((nurse * kDaysPerWeek + day) * stride_ + slot)];
    }
    int stride_;
    std::vector<char> flags_;  // slot 0: Any, slot 1 + s: shift s
};

HardCounts check_hard(const Scenario& sc, const WeekData& week, const History& history, const Solution& sol);

// Counts forbidden successions in a nurse's week, including the border with
// the previous week's last shift.
int border_and_week_successions(const Scenario& sc, ShiftId last_shift, const WeekPattern& pattern);

// S2 (work and per-shift), S3, S4 and S5 for one nurse; S1 is not per nurse.
SoftCosts score_nurse_week(const Scenario& sc, const NurseHistory& history, const WeekPattern& pattern,
                           const RequestTable& requests, const Weights& w);

// S1 for one coverage cell.
inline std::int64_t coverage_shortfall(const Coverage& c, int assigned) {
    return assigned < c.optimal ? c.optimal - assigned : 0;
}

CostReport eval_week(const Scenario& sc, const WeekData& week, const History& history, const Solution& sol,
                     const Weights& w = {});
CostReport eval_week(const Scenario& sc, const WeekData& week, const History& history,
                     std::span<const WeekPattern> patterns, const Weights& w = {});

CostReport eval_counters(const Scenario& sc, const History& final_history, const Weights& w = {});

History advance_history(const History& prev, const Solution& sol, const Scenario& sc);
History advance_history(const History& prev, std::span<const WeekPattern> patterns);

struct HorizonReport {
    CostReport total;                   // hard counts and S1..S7 over the horizon
    std::vector<CostReport> weekly;     // S1..S5 and hard counts per week
    CostReport counters;                // S6, S7
    std::vector<History> histories;     // histories[k] is the input of week k; back() is final
    std::vector<std::vector<WeekPattern>> patterns;

    bool hard_infeasible() const { return !total.hard.feasible(); }
    const History& final_history() const { return histories.back(); }
};

HorizonReport evaluate_horizon(const Scenario& sc, const History& initial, std::span<const WeekData> weeks,
                               std::span<const Solution> sols, const Weights& w = {});

}  // namespace inrc2
