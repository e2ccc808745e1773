#include "inrc2/evaluation.hpp"

#include <algorithm>

namespace inrc2 {

namespace {

int excess(int value, int limit) { return value > limit ? value - limit : 0; }

std::size_t idx(int i) { return static_cast<std::size_t>(i); }

void check_nurse_ids(const Scenario& sc, const Solution& sol) {
    for (const auto& a : sol.assignments) {
        if (a.nurse < 0 || a.nurse >= sc.nurse_count() || a.day < 0 || a.day >= kDaysPerWeek || a.shift < 0 ||
            a.shift >= sc.shift_count() || a.skill < 0 || a.skill >= sc.skill_count())
            throw EvaluationError(EvaluationError::Kind::InfeasiblePattern, "assignment references an unknown id");
    }
}

// Length of the run of days satisfying `pred` that ends on Sunday.
template <typename Pred>
int trailing_run(const WeekPattern& p, Pred pred) {
    int run = 0;
    for (int d = kDaysPerWeek - 1; d >= 0 && pred(p[idx(d)]); --d) ++run;
    return run;
}

}  // namespace

SeriesViolation score_series(const SeriesSpec& spec, const DayFlags& member) {
    SeriesViolation v;
    const int lo = spec.bounds.min;
    const int hi = spec.bounds.max;
    const int carry = spec.carry_in;

    // A run carried in from last week that stops right at the border.
    if (carry > 0 && !member[0]) v.min_side += excess(lo, carry);

    int d = 0;
    while (d < kDaysPerWeek) {
        if (!member[idx(d)]) {
            ++d;
            continue;
        }
        const int start = d;
        while (d < kDaysPerWeek && member[idx(d)]) ++d;
        const int in_week = d - start;
        const bool continues = start == 0 && carry > 0;
        const int length = continues ? carry + in_week : in_week;

        v.max_side += excess(length, hi) - (continues ? excess(carry, hi) : 0);
        if (d < kDaysPerWeek) v.min_side += excess(lo, length);
    }
    return v;
}

DayFlags member_days(const WeekPattern& pattern, SeriesKind kind, ShiftId shift) {
    DayFlags flags{};
    for (int d = 0; d < kDaysPerWeek; ++d) {
        const Slot& s = pattern[idx(d)];
        switch (kind) {
            case SeriesKind::Work: flags[idx(d)] = s.working(); break;
            case SeriesKind::Off: flags[idx(d)] = !s.working(); break;
            case SeriesKind::SameShift: flags[idx(d)] = s.working() && s.shift == shift; break;
        }
    }
    return flags;
}

std::vector<WeekPattern> build_patterns(const Scenario& sc, const Solution& sol) {
    check_nurse_ids(sc, sol);
    std::vector<WeekPattern> patterns(idx(sc.nurse_count()));
    for (const auto& a : sol.assignments) {
        Slot& slot = patterns[idx(a.nurse)][idx(a.day)];
        if (slot.working())
            throw EvaluationError(EvaluationError::Kind::InfeasiblePattern,
                                  "nurse " + sc.nurses[idx(a.nurse)].name + " has several assignments on " +
                                      std::string(day_name(a.day)));
        slot = {a.shift, a.skill};
    }
    return patterns;
}

std::vector<WeekPattern> build_patterns_lenient(const Scenario& sc, const Solution& sol) {
    check_nurse_ids(sc, sol);
    std::vector<WeekPattern> patterns(idx(sc.nurse_count()));
    for (const auto& a : sol.assignments) {
        Slot& slot = patterns[idx(a.nurse)][idx(a.day)];
        if (!slot.working() || std::pair(a.shift, a.skill) < std::pair(slot.shift, slot.skill)) slot = {a.shift, a.skill};
    }
    return patterns;
}

RequestTable::RequestTable(const Scenario& sc, const WeekData& week)
    : stride_(sc.shift_count() + 1), flags_(idx(sc.nurse_count() * kDaysPerWeek * stride_), 0) {
    for (const auto& r : week.requests) {
        const int slot = r.shift == kAnyShift ? 0 : r.shift + 1;
        flags_[idx((r.nurse * kDaysPerWeek + r.day) * stride_ + slot)] = 1;
    }
}

bool RequestTable::violated(NurseId nurse, int day, ShiftId shift) const {
    if (shift == kNoShift) return false;
    return cell(nurse, day, 0) != 0 || cell(nurse, day, shift + 1) != 0;
}

int border_and_week_successions(const Scenario& sc, ShiftId last_shift, const WeekPattern& pattern) {
    int count = 0;
    ShiftId prev = last_shift;
    for (const Slot& s : pattern) {
        if (sc.successions.forbids(prev, s.shift)) ++count;
        prev = s.shift;
    }
    return count;
}

HardCounts check_hard(const Scenario& sc, const WeekData& week, const History& history, const Solution& sol) {
    check_nurse_ids(sc, sol);
    HardCounts h;
    const CoverageTable coverage(sc, week);

    // shifts_on[n][d]: every shift assigned to nurse n on day d
    std::vector<std::array<std::vector<ShiftId>, kDaysPerWeek>> shifts_on(idx(sc.nurse_count()));
    std::vector<int> assigned(idx(sc.shift_count() * sc.skill_count() * kDaysPerWeek), 0);
    for (const auto& a : sol.assignments) {
        shifts_on[idx(a.nurse)][idx(a.day)].push_back(a.shift);
        ++assigned[idx((a.shift * sc.skill_count() + a.skill) * kDaysPerWeek + a.day)];
        if (!sc.nurses[idx(a.nurse)].has_skill(a.skill)) ++h.missing_skill;
    }

    for (ShiftId s = 0; s < sc.shift_count(); ++s)
        for (SkillId k = 0; k < sc.skill_count(); ++k)
            for (int d = 0; d < kDaysPerWeek; ++d)
                h.under_staffing += excess(coverage.at(s, k, d).minimum, assigned[idx((s * sc.skill_count() + k) * kDaysPerWeek + d)]);

    for (NurseId n = 0; n < sc.nurse_count(); ++n) {
        const auto& days = shifts_on[idx(n)];
        for (int d = 0; d < kDaysPerWeek; ++d)
            if (days[idx(d)].size() > 1) ++h.multiple_assignments;

        const std::vector<ShiftId> border{history.entries[idx(n)].last_shift};
        for (int d = 0; d < kDaysPerWeek; ++d) {
            const auto& before = d == 0 ? border : days[idx(d - 1)];
            for (ShiftId a : before)
                for (ShiftId b : days[idx(d)])
                    if (sc.successions.forbids(a, b)) ++h.illegal_successions;
        }
    }
    return h;
}

SoftCosts score_nurse_week(const Scenario& sc, const NurseHistory& history, const WeekPattern& pattern,
                           const RequestTable& requests, const Weights& w) {
    SoftCosts c;
    const Contract& contract = sc.contract_of(history.nurse);

    const SeriesSpec work{SeriesKind::Work, kNoShift, contract.consecutive_work, history.consec_work};
    c.consecutive_work = std::int64_t{w.s2_consecutive_work} * score_series(work, member_days(pattern, SeriesKind::Work)).total();

    const SeriesSpec off{SeriesKind::Off, kNoShift, contract.consecutive_off, history.consec_off};
    c.consecutive_off = std::int64_t{w.s3_consecutive_off} * score_series(off, member_days(pattern, SeriesKind::Off)).total();

    int shift_units = 0;
    for (ShiftId s = 0; s < sc.shift_count(); ++s) {
        const int carry = history.last_shift == s ? history.consec_same_shift : 0;
        const SeriesSpec same{SeriesKind::SameShift, s, sc.shift_types[idx(s)].consecutive, carry};
        shift_units += score_series(same, member_days(pattern, SeriesKind::SameShift, s)).total();
    }
    c.consecutive_shift = std::int64_t{w.s2_consecutive_shift} * shift_units;

    int unwanted = 0;
    for (int d = 0; d < kDaysPerWeek; ++d)
        if (requests.violated(history.nurse, d, pattern[idx(d)].shift)) ++unwanted;
    c.preferences = std::int64_t{w.s4_preference} * unwanted;

    const bool sat = pattern[idx(static_cast<int>(Day::Sat))].working();
    const bool sun = pattern[idx(static_cast<int>(Day::Sun))].working();
    if (contract.complete_weekend && sat != sun) c.complete_weekend = w.s5_complete_weekend;
    return c;
}

CostReport eval_week(const Scenario& sc, const WeekData& week, const History& history, const Solution& sol,
                     const Weights& w) {
    const auto patterns = build_patterns(sc, sol);
    return eval_week(sc, week, history, patterns, w);
}

CostReport eval_week(const Scenario& sc, const WeekData& week, const History& history,
                     std::span<const WeekPattern> patterns, const Weights& w) {
    CostReport report;
    report.per_nurse.resize(idx(sc.nurse_count()));
    const RequestTable requests(sc, week);
    const CoverageTable coverage(sc, week);

    std::vector<int> assigned(idx(sc.shift_count() * sc.skill_count() * kDaysPerWeek), 0);
    for (NurseId n = 0; n < sc.nurse_count(); ++n) {
        const WeekPattern& p = patterns[idx(n)];
        for (int d = 0; d < kDaysPerWeek; ++d)
            if (p[idx(d)].working()) ++assigned[idx((p[idx(d)].shift * sc.skill_count() + p[idx(d)].skill) * kDaysPerWeek + d)];
        const SoftCosts c = score_nurse_week(sc, history.entries[idx(n)], p, requests, w);
        report.per_nurse[idx(n)] = c;
        report.soft += c;
    }

    std::int64_t missing = 0;
    for (ShiftId s = 0; s < sc.shift_count(); ++s)
        for (SkillId k = 0; k < sc.skill_count(); ++k)
            for (int d = 0; d < kDaysPerWeek; ++d)
                missing += coverage_shortfall(coverage.at(s, k, d), assigned[idx((s * sc.skill_count() + k) * kDaysPerWeek + d)]);
    report.soft.optimal_coverage = w.s1_optimal_coverage * missing;
    return report;
}

CostReport eval_counters(const Scenario& sc, const History& final_history, const Weights& w) {
    if (final_history.week_index != sc.num_weeks)
        throw EvaluationError(EvaluationError::Kind::WrongWeek,
                              "counters are evaluated on the final history (week " + std::to_string(sc.num_weeks) +
                                  "), got week " + std::to_string(final_history.week_index));
    CostReport report;
    report.per_nurse.resize(idx(sc.nurse_count()));
    for (const auto& e : final_history.entries) {
        const Contract& c = sc.contract_of(e.nurse);
        SoftCosts& mine = report.per_nurse[idx(e.nurse)];
        mine.total_assignments = std::int64_t{w.s6_total_assignments} *
                                 (excess(c.total_assignments.min, e.total_assignments) + excess(e.total_assignments, c.total_assignments.max));
        mine.working_weekends = std::int64_t{w.s7_total_weekends} * excess(e.total_weekends, c.max_working_weekends);
        report.soft += mine;
    }
    return report;
}

History advance_history(const History& prev, const Solution& sol, const Scenario& sc) {
    if (sol.week_index != prev.week_index)
        throw EvaluationError(EvaluationError::Kind::WeekMismatch,
                              "solution is for week " + std::to_string(sol.week_index) + " but the history precedes week " +
                                  std::to_string(prev.week_index));
    const auto patterns = build_patterns(sc, sol);
    return advance_history(prev, patterns);
}

History advance_history(const History& prev, std::span<const WeekPattern> patterns) {
    History next;
    next.week_index = prev.week_index + 1;
    next.scenario_id = prev.scenario_id;
    next.entries.reserve(prev.entries.size());
    for (const auto& before : prev.entries) {
        const WeekPattern& p = patterns[idx(before.nurse)];
        NurseHistory after;
        after.nurse = before.nurse;

        const int worked = static_cast<int>(std::count_if(p.begin(), p.end(), [](const Slot& s) { return s.working(); }));
        after.total_assignments = before.total_assignments + worked;
        const bool weekend = p[idx(static_cast<int>(Day::Sat))].working() || p[idx(static_cast<int>(Day::Sun))].working();
        after.total_weekends = before.total_weekends + (weekend ? 1 : 0);

        const Slot& sunday = p[idx(static_cast<int>(Day::Sun))];
        after.last_shift = sunday.shift;
        if (sunday.working()) {
            after.consec_work = trailing_run(p, [](const Slot& s) { return s.working(); });
            if (after.consec_work == kDaysPerWeek) after.consec_work += before.consec_work;
            after.consec_same_shift = trailing_run(p, [&](const Slot& s) { return s.shift == sunday.shift; });
            if (after.consec_same_shift == kDaysPerWeek && before.last_shift == sunday.shift)
                after.consec_same_shift += before.consec_same_shift;
        } else {
            after.consec_off = trailing_run(p, [](const Slot& s) { return !s.working(); });
            if (after.consec_off == kDaysPerWeek) after.consec_off += before.consec_off;
        }
        next.entries.push_back(after);
    }
    return next;
}

HorizonReport evaluate_horizon(const Scenario& sc, const History& initial, std::span<const WeekData> weeks,
                               std::span<const Solution> sols, const Weights& w) {
    if (weeks.size() != sols.size() || static_cast<int>(weeks.size()) != sc.num_weeks)
        throw EvaluationError(EvaluationError::Kind::HorizonLength,
                              "expected " + std::to_string(sc.num_weeks) + " weeks and solutions, got " +
                                  std::to_string(weeks.size()) + " and " + std::to_string(sols.size()));
    if (initial.week_index != 0)
        throw EvaluationError(EvaluationError::Kind::WrongWeek, "the initial history must be for week 0");

    auto check_id = [&](const std::string& id, const std::string& what) {
        if (id != sc.id)
            throw EvaluationError(EvaluationError::Kind::ScenarioMismatch,
                                  what + " refers to scenario '" + id + "', expected '" + sc.id + "'");
    };
    check_id(initial.scenario_id, "initial history");

    HorizonReport out;
    out.total.per_nurse.resize(idx(sc.nurse_count()));
    out.histories.push_back(initial);
    for (std::size_t k = 0; k < weeks.size(); ++k) {
        check_id(weeks[k].scenario_id, "week data " + std::to_string(k));
        check_id(sols[k].scenario_id, "solution " + std::to_string(k));
        const History& h = out.histories.back();
        if (sols[k].week_index != h.week_index)
            throw EvaluationError(EvaluationError::Kind::WeekMismatch,
                                  "solution " + std::to_string(k) + " declares week " + std::to_string(sols[k].week_index));

        auto patterns = build_patterns_lenient(sc, sols[k]);
        CostReport week_report = eval_week(sc, weeks[k], h, patterns, w);
        week_report.hard = check_hard(sc, weeks[k], h, sols[k]);
        out.total += week_report;
        out.weekly.push_back(std::move(week_report));
        out.histories.push_back(advance_history(h, patterns));
        out.patterns.push_back(std::move(patterns));
    }
    out.counters = eval_counters(sc, out.histories.back(), w);
    out.total += out.counters;
    return out;
}

}  // namespace inrc2
