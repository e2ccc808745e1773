#include "inrc2/solver.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numeric>
#include <random>
#include <sstream>

namespace inrc2 {

namespace {

std::size_t idx(int i) { return static_cast<std::size_t>(i); }

// Per unit of H2, in the same (scaled) units as the soft costs.
constexpr std::int64_t kHardPenalty = 10000;

using Rng = std::mt19937_64;

int pick(Rng& rng, int n) { return std::uniform_int_distribution<int>(0, n - 1)(rng); }

CustomState spread(const Scenario& sc, const History& history, int week_index) {
    const int remaining = std::max(1, sc.num_weeks - week_index);
    CustomState state;
    state.week_index = week_index;
    for (NurseId n = 0; n < sc.nurse_count(); ++n) {
        const Contract& c = sc.contract_of(n);
        const NurseHistory& h = history.entries[idx(n)];
        const Rational mid(c.total_assignments.min + c.total_assignments.max, 2);
        Rational left = mid - Rational(h.total_assignments);
        left = std::clamp(left, Rational(0), Rational(kDaysPerWeek * remaining));
        state.assignment_target.push_back(left / Rational(remaining));
        state.weekend_budget.push_back(Rational(std::max(0, c.max_working_weekends - h.total_weekends), remaining));
    }
    return state;
}

struct Score {
    std::int64_t hard = 0;
    std::int64_t cost = 0;

    friend auto operator<=>(const Score&, const Score&) = default;
};

struct Delta {
    std::int64_t hard = 0;
    std::int64_t cost = 0;
};

struct Change {
    NurseId nurse;
    int day;
    Slot slot;
};

// Incrementally scored week roster. Costs are multiplied by `scale` so the
// fractional quota surrogate stays in exact integers.
class Roster {
public:
    Roster(const Scenario& sc, const WeekData& week, const History& history, const SolverConfig& cfg,
           const CustomState& budget)
        : sc_(sc), history_(history), cfg_(cfg), coverage_(sc, week), requests_(sc, week) {
        scale_ = 1;
        for (const auto& r : budget.assignment_target) scale_ = std::lcm(scale_, r.den());
        for (const auto& r : budget.weekend_budget) scale_ = std::lcm(scale_, r.den());
        for (NurseId n = 0; n < sc.nurse_count(); ++n) {
            const Rational& q = budget.assignment_target[idx(n)];
            const Rational& b = budget.weekend_budget[idx(n)];
            target_.push_back(q.num() * (scale_ / q.den()));
            weekend_.push_back(b.num() * (scale_ / b.den()));
        }
        patterns_.assign(idx(sc.nurse_count()), WeekPattern{});
        counts_.assign(idx(sc.shift_count() * sc.skill_count() * kDaysPerWeek), 0);
        nurse_eval_.resize(idx(sc.nurse_count()));
        cell_eval_.resize(counts_.size());
        recompute();
    }

    void load(const std::vector<WeekPattern>& patterns) {
        patterns_ = patterns;
        std::fill(counts_.begin(), counts_.end(), 0);
        for (NurseId n = 0; n < sc_.nurse_count(); ++n)
            for (int d = 0; d < kDaysPerWeek; ++d)
                if (patterns_[idx(n)][idx(d)].working()) ++counts_[cell(patterns_[idx(n)][idx(d)], d)];
        recompute();
    }

    const std::vector<WeekPattern>& patterns() const { return patterns_; }
    Score score() const { return total_; }
    std::int64_t hard_weight() const { return kHardPenalty * scale_; }

    Solution solution() const {
        Solution s;
        s.week_index = history_.week_index;
        s.scenario_id = sc_.id;
        for (NurseId n = 0; n < sc_.nurse_count(); ++n)
            for (int d = 0; d < kDaysPerWeek; ++d) {
                const Slot& slot = patterns_[idx(n)][idx(d)];
                if (slot.working()) s.assignments.push_back({n, d, slot.shift, slot.skill});
            }
        return s;
    }

    // Applies the changes and returns the score difference, or nothing (with
    // the roster untouched) when a nurse would gain a forbidden succession.
    std::optional<Delta> apply(const std::vector<Change>& changes) {
        undo_slots_.clear();
        undo_nurses_.clear();
        undo_cells_.clear();
        for (const Change& c : changes) {
            Slot& slot = patterns_[idx(c.nurse)][idx(c.day)];
            undo_slots_.push_back({c.nurse, c.day, slot});
            touch_nurse(c.nurse);
            if (slot.working()) {
                const std::size_t i = cell(slot, c.day);
                touch_cell(i);
                --counts_[i];
            }
            slot = c.slot;
            if (slot.working()) {
                const std::size_t i = cell(slot, c.day);
                touch_cell(i);
                ++counts_[i];
            }
        }
        Delta delta;
        bool legal = true;
        for (const auto& [n, old] : undo_nurses_) {
            const NurseEval now = eval_nurse(n);
            if (now.successions > old.successions) legal = false;
            nurse_eval_[idx(n)] = now;
            delta.hard += now.hard() - old.hard();
            delta.cost += now.cost - old.cost;
        }
        for (const auto& [i, old] : undo_cells_) {
            const Score now = eval_cell(i);
            cell_eval_[i] = now;
            delta.hard += now.hard - old.hard;
            delta.cost += now.cost - old.cost;
        }
        total_.hard += delta.hard;
        total_.cost += delta.cost;
        last_ = delta;
        if (!legal) {
            undo();
            return std::nullopt;
        }
        return delta;
    }

    void undo() {
        for (auto it = undo_slots_.rbegin(); it != undo_slots_.rend(); ++it) {
            Slot& slot = patterns_[idx(it->nurse)][idx(it->day)];
            if (slot.working()) --counts_[cell(slot, it->day)];
            slot = it->slot;
            if (slot.working()) ++counts_[cell(slot, it->day)];
        }
        for (const auto& [n, old] : undo_nurses_) nurse_eval_[idx(n)] = old;
        for (const auto& [i, old] : undo_cells_) cell_eval_[i] = old;
        total_.hard -= last_.hard;
        total_.cost -= last_.cost;
        undo_slots_.clear();
        undo_nurses_.clear();
        undo_cells_.clear();
    }

    int coverage_count(ShiftId s, SkillId k, int d) const { return counts_[cell({s, k}, d)]; }
    const Coverage& coverage(ShiftId s, SkillId k, int d) const { return coverage_.at(s, k, d); }

private:
    struct NurseEval {
        int successions = 0;
        int missing_skill = 0;
        std::int64_t cost = 0;
        std::int64_t hard() const { return successions + missing_skill; }
    };

    std::size_t cell(const Slot& s, int day) const {
        return idx((s.shift * sc_.skill_count() + s.skill) * kDaysPerWeek + day);
    }

    NurseEval eval_nurse(NurseId n) const {
        const WeekPattern& p = patterns_[idx(n)];
        const NurseHistory& h = history_.entries[idx(n)];
        NurseEval e;
        e.successions = border_and_week_successions(sc_, h.last_shift, p);
        int worked = 0;
        for (const Slot& s : p)
            if (s.working()) {
                ++worked;
                if (!sc_.nurses[idx(n)].has_skill(s.skill)) ++e.missing_skill;
            }
        const int weekend = p[5].working() || p[6].working() ? 1 : 0;
        e.cost = scale_ * score_nurse_week(sc_, h, p, requests_, cfg_.weights).total();
        e.cost += cfg_.s6_effective * std::abs(scale_ * worked - target_[idx(n)]);
        e.cost += cfg_.s7_effective * std::max<std::int64_t>(0, scale_ * weekend - weekend_[idx(n)]);
        return e;
    }

    Score eval_cell(std::size_t i) const {
        const int day = static_cast<int>(i % kDaysPerWeek);
        const int pair = static_cast<int>(i / kDaysPerWeek);
        const Coverage& c = coverage_.at(pair / sc_.skill_count(), pair % sc_.skill_count(), day);
        const int have = counts_[i];
        return {std::max(0, c.minimum - have), scale_ * cfg_.weights.s1_optimal_coverage * coverage_shortfall(c, have)};
    }

    void recompute() {
        total_ = {};
        for (NurseId n = 0; n < sc_.nurse_count(); ++n) {
            nurse_eval_[idx(n)] = eval_nurse(n);
            total_.hard += nurse_eval_[idx(n)].hard();
            total_.cost += nurse_eval_[idx(n)].cost;
        }
        for (std::size_t i = 0; i < counts_.size(); ++i) {
            cell_eval_[i] = eval_cell(i);
            total_.hard += cell_eval_[i].hard;
            total_.cost += cell_eval_[i].cost;
        }
    }

    void touch_nurse(NurseId n) {
        for (const auto& u : undo_nurses_)
            if (u.first == n) return;
        undo_nurses_.push_back({n, nurse_eval_[idx(n)]});
    }
    void touch_cell(std::size_t i) {
        for (const auto& u : undo_cells_)
            if (u.first == i) return;
        undo_cells_.push_back({i, cell_eval_[i]});
    }

    const Scenario& sc_;
    const History& history_;
    const SolverConfig& cfg_;
    CoverageTable coverage_;
    RequestTable requests_;
    std::int64_t scale_ = 1;
    std::vector<std::int64_t> target_;
    std::vector<std::int64_t> weekend_;

    std::vector<WeekPattern> patterns_;
    std::vector<int> counts_;
    std::vector<NurseEval> nurse_eval_;
    std::vector<Score> cell_eval_;
    Score total_;

    std::vector<Change> undo_slots_;
    std::vector<std::pair<NurseId, NurseEval>> undo_nurses_;
    std::vector<std::pair<std::size_t, Score>> undo_cells_;
    Delta last_;
};

// Draws one random neighbour; empty when the draw is a no-op.
std::vector<Change> random_move(const Scenario& sc, const std::vector<WeekPattern>& roster, Rng& rng) {
    std::vector<Change> changes;
    const NurseId n = pick(rng, sc.nurse_count());
    const int d = pick(rng, kDaysPerWeek);
    const Nurse& nurse = sc.nurses[idx(n)];
    const Slot cur = roster[idx(n)][idx(d)];
    const int roll = pick(rng, 100);

    if (roll < 45) {
        if (cur.working()) {
            changes.push_back({n, d, Slot{}});
        } else {
            const SkillId k = nurse.skills[idx(pick(rng, static_cast<int>(nurse.skills.size())))];
            changes.push_back({n, d, {pick(rng, sc.shift_count()), k}});
        }
    } else if (roll < 55) {
        // rewrite a short block of one nurse's week with a single value
        const int len = 2 + pick(rng, 3);
        Slot value;
        if (pick(rng, 3) > 0) value = {pick(rng, sc.shift_count()), nurse.skills[idx(pick(rng, static_cast<int>(nurse.skills.size())))]};
        for (int day = d; day < std::min(kDaysPerWeek, d + len); ++day)
            if (roster[idx(n)][idx(day)] != value) changes.push_back({n, day, value});
    } else if (roll < 70) {
        if (!cur.working() || sc.shift_count() < 2) return changes;
        ShiftId s = pick(rng, sc.shift_count() - 1);
        if (s >= cur.shift) ++s;
        changes.push_back({n, d, {s, cur.skill}});
    } else if (roll < 78) {
        if (!cur.working() || nurse.skills.size() < 2) return changes;
        SkillId k = cur.skill;
        while (k == cur.skill) k = nurse.skills[idx(pick(rng, static_cast<int>(nurse.skills.size())))];
        changes.push_back({n, d, {cur.shift, k}});
    } else {
        if (sc.nurse_count() < 2) return changes;
        NurseId m = pick(rng, sc.nurse_count() - 1);
        if (m >= n) ++m;
        const int len = 1 + pick(rng, 3);
        const Nurse& other = sc.nurses[idx(m)];
        bool differs = false;
        for (int day = d; day < std::min(kDaysPerWeek, d + len); ++day) {
            const Slot a = roster[idx(n)][idx(day)];
            const Slot b = roster[idx(m)][idx(day)];
            if ((a.working() && !other.has_skill(a.skill)) || (b.working() && !nurse.has_skill(b.skill))) return {};
            if (a != b) differs = true;
            changes.push_back({n, day, b});
            changes.push_back({m, day, a});
        }
        if (!differs) changes.clear();
    }
    return changes;
}

class Clock {
public:
    explicit Clock(const SolverConfig& cfg) : cfg_(cfg), start_(std::chrono::steady_clock::now()) {}

    bool expired(std::int64_t iteration) const {
        if (cfg_.max_iterations) return iteration >= *cfg_.max_iterations;
        if (iteration % 128 != 0) return false;
        const std::chrono::duration<double> spent = std::chrono::steady_clock::now() - start_;
        return spent.count() >= cfg_.time_budget;
    }

private:
    const SolverConfig& cfg_;
    std::chrono::steady_clock::time_point start_;
};

std::vector<WeekPattern> patterns_of(const Scenario& sc, const Solution& sol) {
    return build_patterns_lenient(sc, sol);
}

void check_budget(const Scenario& sc, const CustomState& budget) {
    if (budget.assignment_target.size() != idx(sc.nurse_count()) ||
        budget.weekend_budget.size() != idx(sc.nurse_count()))
        throw SolverError(SolverError::Kind::BadCustomState, "custom state does not match the scenario's nurses");
}

}  // namespace

CustomState counter_budget(const Scenario& sc, const History& history, int week_index) {
    if (week_index < 0 || week_index >= sc.num_weeks)
        throw std::invalid_argument("counter_budget: week index outside the horizon");
    return spread(sc, history, week_index);
}

std::string write_custom(const CustomState& state, const Scenario& sc) {
    std::ostringstream out;
    out << "CUSTOM\n" << state.week_index << "\n";
    for (NurseId n = 0; n < sc.nurse_count(); ++n)
        out << sc.nurses[idx(n)].name << ' ' << state.assignment_target[idx(n)].to_string() << ' '
            << state.weekend_budget[idx(n)].to_string() << '\n';
    return out.str();
}

CustomState parse_custom(const std::string& text, const Scenario& sc) {
    auto fail = [](const std::string& why) {
        return SolverError(SolverError::Kind::BadCustomState, "custom file: " + why);
    };
    std::istringstream in(text);
    std::string word;
    CustomState state;
    if (!(in >> word) || word != "CUSTOM" || !(in >> state.week_index)) throw fail("bad header");
    state.assignment_target.assign(idx(sc.nurse_count()), Rational(0));
    state.weekend_budget.assign(idx(sc.nurse_count()), Rational(0));
    std::vector<bool> seen(idx(sc.nurse_count()), false);
    std::string name, target, weekend;
    while (in >> name) {
        if (!(in >> target >> weekend)) throw fail("truncated line for " + name);
        const auto n = sc.find_nurse(name);
        if (!n) throw fail("unknown nurse " + name);
        try {
            state.assignment_target[idx(*n)] = Rational::parse(target);
            state.weekend_budget[idx(*n)] = Rational::parse(weekend);
        } catch (const std::exception&) {
            throw fail("bad number for " + name);
        }
        if (state.assignment_target[idx(*n)] < Rational(0) || state.weekend_budget[idx(*n)] < Rational(0))
            throw fail("negative target for " + name);
        seen[idx(*n)] = true;
    }
    if (std::find(seen.begin(), seen.end(), false) != seen.end()) throw fail("missing nurses");
    return state;
}

Solution greedy_construct(const Scenario& sc, const WeekData& week, const History& history, const SolverConfig& cfg,
                          const CustomState& budget) {
    check_budget(sc, budget);
    Rng rng(cfg.seed);
    const CoverageTable coverage(sc, week);

    struct Cell {
        ShiftId shift;
        SkillId skill;
        int day;
        int eligible;
    };
    std::vector<Cell> cells;
    for (ShiftId s = 0; s < sc.shift_count(); ++s)
        for (SkillId k = 0; k < sc.skill_count(); ++k) {
            int eligible = 0;
            for (const Nurse& n : sc.nurses) eligible += n.has_skill(k) ? 1 : 0;
            for (int d = 0; d < kDaysPerWeek; ++d)
                if (coverage.at(s, k, d).minimum > 0) cells.push_back({s, k, d, eligible});
        }
    std::vector<NurseId> order(idx(sc.nurse_count()));
    std::iota(order.begin(), order.end(), 0);

    // The first pass always takes the cheapest nurse; later passes reshuffle
    // and sometimes take any legal one.
    constexpr int kAttempts = 30;
    std::optional<SolverError> stuck;
    int stuck_missing = 0;
    for (int attempt = 0; attempt < kAttempts; ++attempt) {
        Roster roster(sc, week, history, cfg, budget);
        std::shuffle(cells.begin(), cells.end(), rng);
        std::stable_sort(cells.begin(), cells.end(), [](const Cell& a, const Cell& b) { return a.eligible < b.eligible; });
        std::shuffle(order.begin(), order.end(), rng);

        std::optional<std::string> failed;
        for (const Cell& c : cells) {
            while (!failed && roster.coverage_count(c.shift, c.skill, c.day) < coverage.at(c.shift, c.skill, c.day).minimum) {
                std::vector<std::pair<std::int64_t, NurseId>> candidates;
                for (NurseId n : order) {
                    if (!sc.nurses[idx(n)].has_skill(c.skill) || roster.patterns()[idx(n)][idx(c.day)].working()) continue;
                    const auto delta = roster.apply({{n, c.day, {c.shift, c.skill}}});
                    if (!delta) continue;
                    roster.undo();
                    candidates.push_back({delta->cost + roster.hard_weight() * delta->hard, n});
                }
                if (candidates.empty()) {
                    failed = "no nurse left for " + sc.shift_types[idx(c.shift)].name + "/" + sc.skills[idx(c.skill)] +
                             " on " + std::string(day_name(c.day));
                    break;
                }
                auto chosen = std::min_element(candidates.begin(), candidates.end(),
                                               [](const auto& a, const auto& b) { return a.first < b.first; });
                if (attempt > 0 && pick(rng, 10) < 3)
                    chosen = candidates.begin() + pick(rng, static_cast<int>(candidates.size()));
                roster.apply({{chosen->second, c.day, {c.shift, c.skill}}});
            }
            if (failed) break;
        }
        if (!failed) return roster.solution();
        const int missing = static_cast<int>(roster.score().hard);
        if (!stuck || missing < stuck_missing) {
            stuck.emplace(SolverError::Kind::ConstructionStuck, *failed, roster.solution());
            stuck_missing = missing;
        }
    }
    throw *stuck;
}

Solution local_search(const Scenario& sc, const WeekData& week, const History& history, const Solution& start,
                      const SolverConfig& cfg, const CustomState& budget) {
    check_budget(sc, budget);
    if (cfg.max_iterations && *cfg.max_iterations <= 0) return start;

    Rng rng(cfg.seed ^ 0x9e3779b97f4a7c15ULL);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    Roster roster(sc, week, history, cfg, budget);
    roster.load(patterns_of(sc, start));

    std::vector<WeekPattern> best = roster.patterns();
    Score best_score = roster.score();
    const double hard_weight = static_cast<double>(roster.hard_weight());

    // Start hot enough that about half of the uphill moves are accepted.
    double uphill = 0;
    int samples = 0;
    for (int i = 0; i < 200; ++i) {
        const auto move = random_move(sc, roster.patterns(), rng);
        if (move.empty()) continue;
        const auto delta = roster.apply(move);
        if (!delta) continue;
        roster.undo();
        if (delta->hard == 0 && delta->cost > 0) {
            uphill += static_cast<double>(delta->cost);
            ++samples;
        }
    }
    const double t0 = samples > 0 ? uphill / samples / std::log(2.0) : 10.0;
    const double t_min = t0 * 1e-3;
    const std::int64_t steps_per_temperature = std::max(100, 20 * sc.nurse_count());
    const double alpha = 0.97;

    Clock clock(cfg);
    double t = t0;
    for (std::int64_t it = 0; !clock.expired(it); ++it) {
        if (it > 0 && it % steps_per_temperature == 0) {
            t *= alpha;
            if (t < t_min) {
                t = t0;
                roster.load(best);
            }
        }
        const auto move = random_move(sc, roster.patterns(), rng);
        if (move.empty()) continue;
        const auto delta = roster.apply(move);
        if (!delta) continue;
        const double change = static_cast<double>(delta->cost) + hard_weight * static_cast<double>(delta->hard);
        if (change > 0 && unit(rng) >= std::exp(-change / t)) {
            roster.undo();
            continue;
        }
        if (roster.score() < best_score) {
            best_score = roster.score();
            best = roster.patterns();
        }
    }
    roster.load(best);
    Solution out = roster.solution();
    out.week_index = start.week_index;
    out.scenario_id = start.scenario_id;
    return out;
}

WeekSolution solve_week(const Scenario& sc, const History& history, const WeekData& week, const SolverConfig& cfg,
                        const std::optional<CustomState>& custom_in) {
    if (custom_in && custom_in->week_index != history.week_index)
        throw SolverError(SolverError::Kind::BadCustomState, "custom state is for week " +
                                                                 std::to_string(custom_in->week_index) + ", not week " +
                                                                 std::to_string(history.week_index));
    const CustomState budget = custom_in ? *custom_in : counter_budget(sc, history, history.week_index);
    check_budget(sc, budget);

    Solution start;
    try {
        start = greedy_construct(sc, week, history, cfg, budget);
    } catch (const SolverError& e) {
        if (e.kind() != SolverError::Kind::ConstructionStuck) throw;
        start = e.partial();
    }
    start.week_index = history.week_index;
    start.scenario_id = sc.id;

    WeekSolution result;
    result.solution = local_search(sc, week, history, start, cfg, budget);
    result.feasible = check_hard(sc, week, history, result.solution).feasible();
    const History next = advance_history(history, result.solution, sc);
    result.custom_out = spread(sc, next, next.week_index);
    return result;
}

}  // namespace inrc2
