#include <gtest/gtest.h>

#include "fixtures.hpp"
#include "inrc2/evaluation.hpp"
#include "inrc2/solver.hpp"
#include "inrc2/textio.hpp"
#include "oracles.hpp"
#include "random_instances.hpp"

using namespace inrc2;

namespace {

const Scenario& sample() {
    static const Scenario sc = parse_scenario(fixtures::kScenario);
    return sc;
}

SolverConfig capped(std::int64_t iterations, std::uint64_t seed = 1) {
    SolverConfig cfg;
    cfg.max_iterations = iterations;
    cfg.seed = seed;
    return cfg;
}

// Weekly cost only: the surrogate is switched off.
SolverConfig exact(std::int64_t iterations, std::uint64_t seed) {
    SolverConfig cfg = capped(iterations, seed);
    cfg.s6_effective = 0;
    cfg.s7_effective = 0;
    return cfg;
}

Scenario single_nurse() {
    return parse_scenario(R"(SCENARIO = one
WEEKS = 1
SKILLS = 1
Nurse
SHIFT_TYPES = 1
Day (1,7)
FORBIDDEN_SHIFT_TYPES_SUCCESSIONS
Day 0
CONTRACTS = 1
Any (0,7) (1,7) (1,9) 1 0
NURSES = 1
Ann Any 1 Nurse
)");
}

History fresh_history(const Scenario& sc) {
    History h;
    h.scenario_id = sc.id;
    for (NurseId n = 0; n < sc.nurse_count(); ++n) h.entries.push_back({n, 0, 0, kNoShift, 0, 0, 1});
    return h;
}

}  // namespace

TEST(CounterBudget, MidpointSpreadOverRemainingWeeks) {
    const Scenario& sc = sample();
    const History h = parse_history(fixtures::kHistory, sc);
    const CustomState b = counter_budget(sc, h, 0);
    EXPECT_EQ(b.assignment_target[0], Rational(37, 8));  // 18.5 / 4
    EXPECT_EQ(b.assignment_target[2], Rational(9, 4));   // 9 / 4
    EXPECT_EQ(b.weekend_budget[0], Rational(1, 2));
}

TEST(CounterBudget, LastWeekAndSaturation) {
    const Scenario& sc = sample();
    History h = parse_history(fixtures::kHistory, sc);
    h.entries[0].total_assignments = 15;
    h.entries[1].total_assignments = 22;
    h.entries[3].total_assignments = 0;
    h.entries[4].total_weekends = 3;
    const CustomState last = counter_budget(sc, h, 3);
    EXPECT_EQ(last.assignment_target[0], Rational(7, 2));
    EXPECT_EQ(last.assignment_target[1], Rational(0));
    EXPECT_EQ(last.assignment_target[3], Rational(7));  // 9 left, but only 7 days in a week
    EXPECT_EQ(last.weekend_budget[4], Rational(0));
    EXPECT_THROW(counter_budget(sc, h, 4), std::invalid_argument);
}

TEST(CustomFile, RoundTripAndErrors) {
    const Scenario& sc = sample();
    const CustomState b = counter_budget(sc, parse_history(fixtures::kHistory, sc), 1);
    const std::string text = write_custom(b, sc);
    EXPECT_EQ(parse_custom(text, sc), b);
    EXPECT_NE(text.find("Patrick 37/6 2/3"), std::string::npos);

    EXPECT_THROW(parse_custom("CUSTOM\n0\nPatrick 1 1\n", sc), SolverError);
    EXPECT_THROW(parse_custom("HELLO\n0\n", sc), SolverError);
    EXPECT_THROW(parse_custom(text + "Zed 1 1\n", sc), SolverError);
    std::string negative = text;
    negative.replace(negative.find("37/6"), 4, "-1");
    EXPECT_THROW(parse_custom(negative, sc), SolverError);
}

TEST(Greedy, NoDemandGivesEmptyRoster) {
    const Scenario& sc = sample();
    const History h = parse_history(fixtures::kHistory, sc);
    WeekData w;
    w.scenario_id = sc.id;
    const Solution s = greedy_construct(sc, w, h, capped(0), counter_budget(sc, h, 0));
    EXPECT_TRUE(s.assignments.empty());
}

TEST(Greedy, SingleRequirement) {
    const Scenario sc = single_nurse();
    const History h = fresh_history(sc);
    const WeekData w = parse_week_data("WEEK_DATA\none\nREQUIREMENTS\nDay Nurse (1,1) (0,0) (0,0) (0,0) (0,0) (0,0) (0,0)\nSHIFT_OFF_REQUESTS = 0\n", sc);
    const Solution s = greedy_construct(sc, w, h, capped(0), counter_budget(sc, h, 0));
    ASSERT_EQ(s.assignments.size(), 1u);
    EXPECT_EQ(s.assignments[0], (Assignment{0, 0, 0, 0}));
}

TEST(Greedy, SampleWeekIsHardFeasible) {
    const Scenario& sc = sample();
    const History h = parse_history(fixtures::kHistory, sc);
    const WeekData w = parse_week_data(fixtures::kWeek, sc);
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        const Solution s = greedy_construct(sc, w, h, capped(0, seed), counter_budget(sc, h, 0));
        EXPECT_TRUE(check_hard(sc, w, h, s).feasible()) << seed;
    }
}

TEST(Greedy, StuckReportsPartialRoster) {
    const Scenario sc = single_nurse();
    const History h = fresh_history(sc);
    const WeekData w = parse_week_data("WEEK_DATA\none\nREQUIREMENTS\nDay Nurse (2,2) (0,0) (0,0) (0,0) (0,0) (0,0) (0,0)\nSHIFT_OFF_REQUESTS = 0\n", sc);
    try {
        greedy_construct(sc, w, h, capped(0), counter_budget(sc, h, 0));
        FAIL();
    } catch (const SolverError& e) {
        EXPECT_EQ(e.kind(), SolverError::Kind::ConstructionStuck);
        EXPECT_EQ(e.partial().assignments.size(), 1u);
    }
}

TEST(LocalSearch, ZeroIterationsReturnsStart) {
    const Scenario& sc = sample();
    const History h = parse_history(fixtures::kHistory, sc);
    const WeekData w = parse_week_data(fixtures::kWeek, sc);
    Solution start{0, sc.id, {{4, 6, 2, 1}, {0, 0, 2, 0}}};
    EXPECT_EQ(local_search(sc, w, h, start, capped(0), counter_budget(sc, h, 0)), start);
}

TEST(LocalSearch, DropsUnwantedSurplusShift) {
    const Scenario sc = single_nurse();
    const History h = fresh_history(sc);
    const WeekData w = parse_week_data("WEEK_DATA\none\nREQUIREMENTS\nDay Nurse (0,0) (0,0) (0,0) (0,0) (0,0) (0,0) (0,0)\nSHIFT_OFF_REQUESTS = 1\nAnn Any Wed\n", sc);
    const Solution start{0, sc.id, {{0, 2, 0, 0}}};
    const Solution out = local_search(sc, w, h, start, exact(2000, 3), counter_budget(sc, h, 0));
    EXPECT_LT(eval_week(sc, w, h, out).total(), eval_week(sc, w, h, start).total());
    for (const auto& a : out.assignments) EXPECT_NE(a.day, 2);
}

TEST(LocalSearch, NeverWorseThanGreedyStart) {
    gen::Rng rng(12);
    for (int trial = 0; trial < 30; ++trial) {
        const Scenario sc = gen::tiny_scenario(rng, 4, 3, 2, 2);
        const WeekData w = gen::random_week(rng, sc);
        const History h = gen::random_history(rng, sc);
        const SolverConfig cfg = exact(3000, static_cast<std::uint64_t>(trial));
        const CustomState b = counter_budget(sc, h, 0);
        Solution start;
        try {
            start = greedy_construct(sc, w, h, cfg, b);
        } catch (const SolverError& e) {
            start = e.partial();
        }
        const Solution out = local_search(sc, w, h, start, cfg, b);
        const auto before = std::make_pair(check_hard(sc, w, h, start).total(), eval_week(sc, w, h, start).total());
        const auto after = std::make_pair(check_hard(sc, w, h, out).total(), eval_week(sc, w, h, out).total());
        EXPECT_LE(after, before) << trial;
        EXPECT_EQ(check_hard(sc, w, h, out).missing_skill, 0);
        EXPECT_EQ(check_hard(sc, w, h, out).multiple_assignments, 0);
    }
}

TEST(LocalSearch, ReachesEnumeratedOptimum) {
    gen::Rng rng(2025);
    int hits = 0;
    const int trials = 20;
    for (int trial = 0; trial < trials; ++trial) {
        const Scenario sc = gen::tiny_scenario(rng, 2, 2, 1, 1);
        const WeekData w = gen::random_week(rng, sc);
        const History h = gen::random_history(rng, sc);
        const oracle::WeekOptimum best = oracle::two_nurse_week_optimum(sc, w, h);
        const Solution s = solve_week(sc, h, w, exact(20000, static_cast<std::uint64_t>(trial))).solution;
        const oracle::WeekOptimum got{check_hard(sc, w, h, s).under_staffing, eval_week(sc, w, h, s).total()};
        EXPECT_GE(got, best);
        if (got == best) ++hits;
    }
    EXPECT_GE(hits, trials - 1);
}

TEST(SolveWeek, SeedDeterminism) {
    const Scenario& sc = sample();
    const History h = parse_history(fixtures::kHistory, sc);
    const WeekData w = parse_week_data(fixtures::kWeek, sc);
    const auto a = solve_week(sc, h, w, capped(20000, 42));
    const auto b = solve_week(sc, h, w, capped(20000, 42));
    EXPECT_EQ(write_solution(a.solution, sc), write_solution(b.solution, sc));
    EXPECT_EQ(a.custom_out, b.custom_out);
    EXPECT_TRUE(a.feasible);
}

TEST(SolveWeek, CustomInMatchesFreshBudgetOnWeekZero) {
    const Scenario& sc = sample();
    const History h = parse_history(fixtures::kHistory, sc);
    const WeekData w = parse_week_data(fixtures::kWeek, sc);
    const auto plain = solve_week(sc, h, w, capped(5000, 7));
    const auto seeded = solve_week(sc, h, w, capped(5000, 7), counter_budget(sc, h, 0));
    EXPECT_EQ(plain.solution, seeded.solution);
    EXPECT_EQ(plain.custom_out.week_index, 1);
    EXPECT_EQ(plain.custom_out, counter_budget(sc, advance_history(h, plain.solution, sc), 1));

    CustomState wrong = counter_budget(sc, h, 0);
    wrong.week_index = 2;
    EXPECT_THROW(solve_week(sc, h, w, capped(10), wrong), SolverError);
}

TEST(SolveWeek, ImpossibleDemandStillGivesRoster) {
    const Scenario sc = single_nurse();
    const History h = fresh_history(sc);
    const WeekData w = parse_week_data("WEEK_DATA\none\nREQUIREMENTS\nDay Nurse (2,2) (1,1) (0,0) (0,0) (0,0) (0,0) (0,0)\nSHIFT_OFF_REQUESTS = 0\n", sc);
    const auto r = solve_week(sc, h, w, capped(2000));
    EXPECT_FALSE(r.feasible);
    EXPECT_EQ(check_hard(sc, w, h, r.solution).under_staffing, 1);
}

TEST(SolveWeek, WallClockMode) {
    const Scenario& sc = sample();
    const History h = parse_history(fixtures::kHistory, sc);
    const WeekData w = parse_week_data(fixtures::kWeek, sc);
    SolverConfig cfg;
    cfg.time_budget = 0.2;
    const auto r = solve_week(sc, h, w, cfg);
    EXPECT_TRUE(r.feasible);
}
