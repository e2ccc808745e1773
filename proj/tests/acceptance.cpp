// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any
// criterion fails.

#include <chrono>
#include <filesystem>
#include <functional>
#include <iostream>
#include <sstream>

#include "adjudication_tables.hpp"
#include "border_tables.hpp"
#include "fixtures.hpp"
#include "inrc2/adjudication.hpp"
#include "inrc2/evaluation.hpp"
#include "inrc2/generator.hpp"
#include "inrc2/simulator.hpp"
#include "inrc2/solver.hpp"
#include "inrc2/textio.hpp"
#include "oracles.hpp"
#include "random_instances.hpp"
#include "scratch.hpp"

using namespace inrc2;
namespace fs = std::filesystem;

namespace {

// Collects the first few mismatches of a criterion.
struct Check {
    int failures = 0;
    std::ostringstream detail;

    void expect(bool ok, const std::string& what) {
        if (ok) return;
        if (failures++ < 3) detail << (failures > 1 ? "; " : "") << what;
    }
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) { return std::chrono::duration<double>(Clock::now() - start).count(); }

std::size_t ix(int i) { return static_cast<std::size_t>(i); }

// 1: border rows within a second.
void border_rows(Check& c, std::string& note) {
    const auto start = Clock::now();
    const Scenario sc = parse_scenario(fixtures::kBorderScenario);
    int rows = 0;
    for (const auto& row : fixtures::series_rows()) {
        ++rows;
        for (int carry = row.carry_lo; carry <= row.carry_hi; ++carry)
            c.expect(fixtures::row_units(row, carry) == row.expected,
                     std::string(row.group) + " '" + std::string(row.days) + "' c=" + std::to_string(carry));
    }
    WeekData none;
    none.scenario_id = sc.id;
    for (const auto& row : fixtures::succession_rows()) {
        ++rows;
        History h;
        h.scenario_id = sc.id;
        h.entries = {{0, 0, 0, row.last_shift == 'E' ? 0 : 1, 1, 1, 0}};
        Solution s{0, sc.id, {}};
        if (row.monday != '-') s.assignments.push_back({0, 0, row.monday == 'E' ? 0 : 1, 0});
        c.expect((check_hard(sc, none, h, s).illegal_successions == 1) == row.violated,
                 std::string(1, row.last_shift) + "->" + row.monday);
    }
    const double t = seconds_since(start);
    c.expect(t < 1.0, "took " + std::to_string(t) + " s");
    note = std::to_string(rows) + " rows";
}

// 2: ranks, means and finalists of the worked example.
void adjudication_example(Check& c, std::string& note) {
    const ScoreMatrix s = fixtures::example_scores();
    const RankMatrix ranks = compute_ranks(s);
    c.expect(ranks == fixtures::example_ranks(), "rank matrix differs");
    const auto means = mean_ranks(ranks);
    for (std::size_t i = 0; i < means.size(); ++i)
        c.expect(means[i].to_fixed(2) == fixtures::kExampleMeans[i],
                 s.participants[i] + " mean " + means[i].to_fixed(2));
    std::vector<int> finalists = select_finalists(means);
    std::sort(finalists.begin(), finalists.end());
    c.expect(finalists == std::vector<int>{0, 2, 4, 5, 6}, "finalists differ");
    note = "finalists Solver 1, 3, 5, 6, 7";
}

// 3: the worked example files and a generated corpus round-trip.
void text_formats(Check& c, std::string& note) {
    const auto start = Clock::now();
    const Scenario sc = parse_scenario(fixtures::kScenario);
    c.expect(sc.id == "n005w4" && sc.num_weeks == 4 && sc.skill_count() == 2 && sc.nurse_count() == 5, "scenario header");
    c.expect(sc.shift_types[2].name == "Night" && sc.shift_types[2].consecutive == Interval{4, 5}, "Night limits");
    c.expect(sc.successions.forbids(2, 0) && sc.successions.forbids(2, 1) && sc.successions.forbids(1, 0) &&
                 !sc.successions.forbids(0, 2),
             "successions");
    const Contract& full = sc.contracts[0];
    c.expect(full.total_assignments == Interval{15, 22} && full.consecutive_work == Interval{3, 5} &&
                 full.consecutive_off == Interval{2, 3} && full.max_working_weekends == 2 && full.complete_weekend,
             "FullTime contract");
    c.expect(sc.nurses[3].name == "Sara" && sc.nurses[3].skills == std::vector<SkillId>{1}, "Sara");

    const WeekData w = parse_week_data(fixtures::kWeek, sc);
    c.expect(w.requirements.size() == 6 && w.requirements[1].per_day[0] == Coverage{1, 2}, "requirements");
    c.expect(w.requests.size() == 3 && w.requests[1] == ShiftOffRequest{3, 2, 5}, "requests");
    const History h = parse_history(fixtures::kHistory, sc);
    c.expect(h.entries[0] == NurseHistory{0, 0, 0, 2, 1, 4, 0}, "Patrick history");
    c.expect(h.entries[2] == NurseHistory{2, 0, 0, kNoShift, 0, 0, 3}, "Stefaan history");
    const Solution s = parse_solution(fixtures::kSolution, sc);
    c.expect(s.week_index == 3 && s.assignments.size() == 10 && s.assignments[1] == Assignment{0, 1, 2, 0},
             "solution lines");

    int files = 0;
    for (std::uint64_t seed = 0; files < 1000; ++seed) {
        GeneratorConfig g;
        g.nurses = 3 + static_cast<int>(seed * 7 % 60);
        g.weeks = seed % 2 ? 4 : 8;
        g.seed = seed;
        g.skill_count = 1 + static_cast<int>(seed % 3);
        g.shift_count = 1 + static_cast<int>(seed % 4);
        const Dataset d = generate_instance(g);
        const std::string sc_text = write_scenario(d.scenario);
        const Scenario back = parse_scenario(sc_text);
        c.expect(back == d.scenario && write_scenario(back) == sc_text, "scenario seed " + std::to_string(seed));
        ++files;
        for (const auto& hist : d.histories) {
            const std::string t = write_history(hist, back);
            const History p = parse_history(t, back);
            c.expect(p == hist && write_history(p, back) == t, "history seed " + std::to_string(seed));
            ++files;
        }
        for (const auto& week : d.weeks) {
            const std::string t = write_week_data(week, back);
            const WeekData p = parse_week_data(t, back);
            c.expect(p == week && write_week_data(p, back) == t, "week seed " + std::to_string(seed));
            ++files;
        }
    }
    const double t = seconds_since(start);
    c.expect(t < 10.0, "took " + std::to_string(t) + " s");
    note = std::to_string(files) + " generated files";
}

// 4: week-by-week replay against whole-timeline scoring, per series kind.
void border_replay(Check& c, std::string& note) {
    const auto start = Clock::now();
    gen::Rng rng(2024);
    const int trials = 10000;
    for (int trial = 0; trial < trials; ++trial) {
        const Scenario sc = gen::tiny_scenario(rng, 1, 3, 1, 2);
        const History h0 = gen::random_history(rng, sc);
        const auto timeline = gen::random_timeline(rng, sc, 2, gen::uniform(rng, 1, 3));
        const auto sols = gen::to_solutions(sc, timeline, 2);
        WeekData none;
        none.scenario_id = sc.id;

        SoftCosts replay;
        History h = h0;
        for (const auto& s : sols) {
            replay += eval_week(sc, none, h, s).soft;
            h = advance_history(h, s, sc);
        }
        const oracle::Totals want = oracle::brute_force_horizon(sc, h0, {none, none}, timeline);
        const std::string tag = "trial " + std::to_string(trial);
        c.expect(replay.consecutive_work == want.soft.consecutive_work, tag + " work");
        c.expect(replay.consecutive_off == want.soft.consecutive_off, tag + " off");
        c.expect(replay.consecutive_shift == want.soft.consecutive_shift, tag + " same shift");
    }
    const double t = seconds_since(start);
    c.expect(t < 30.0, "took " + std::to_string(t) + " s");
    note = std::to_string(trials) + " two-week patterns for each of work, off, same shift";
}

// 5: the capped solver against enumeration on two-nurse weeks.
void solver_optimum(Check& c, std::string& note) {
    const auto start = Clock::now();
    gen::Rng rng(77);
    int hits = 0, feasible = 0;
    const int instances = 100;
    for (int i = 0; i < instances; ++i) {
        const Scenario sc = gen::tiny_scenario(rng, 2, 2, 1, 1);
        const WeekData w = gen::random_week(rng, sc);
        const History h = gen::random_history(rng, sc);
        const oracle::WeekOptimum best = oracle::two_nurse_week_optimum(sc, w, h);

        SolverConfig cfg;
        cfg.max_iterations = 20000 * sc.nurse_count();
        cfg.seed = static_cast<std::uint64_t>(i);
        // The enumeration scores one week, so the horizon counters stay out.
        cfg.s6_effective = 0;
        cfg.s7_effective = 0;
        const Solution s = solve_week(sc, h, w, cfg).solution;
        const HardCounts hard = check_hard(sc, w, h, s);
        const oracle::WeekOptimum got{hard.under_staffing, eval_week(sc, w, h, s).total()};
        c.expect(got >= best, "instance " + std::to_string(i) + " beats the enumeration");
        if (got == best) ++hits;
        if (best.hard_h2 == 0) {
            ++feasible;
            c.expect(hard.feasible(), "instance " + std::to_string(i) + " infeasible");
        }
    }
    c.expect(hits * 100 >= 95 * instances, "optimum on " + std::to_string(hits) + "/" + std::to_string(instances));
    const double t = seconds_since(start);
    c.expect(t < 300.0, "took " + std::to_string(t) + " s");
    note = "optimum on " + std::to_string(hits) + "/" + std::to_string(instances) + ", " + std::to_string(feasible) +
           " feasible";
}

std::string quote(const std::string& s) { return "'" + s + "'"; }

struct Generated {
    std::vector<std::string> files;
};

Generated generate_n005w4(const fs::path& dir) {
    Generated g;
    int status = 0;
    std::istringstream out(testing_support::run_command(
        std::string(INRC2_CLI_EXE) + " generate --nurses 5 --weeks 4 --seed 17 --out " + quote(dir.string()), &status));
    if (status != 0) throw std::runtime_error("generate failed");
    for (std::string line; std::getline(out, line);) g.files.push_back(line);
    if (g.files.size() != 14) throw std::runtime_error("generate wrote " + std::to_string(g.files.size()) + " files");
    return g;
}

std::string simulate_command(const Generated& g, const fs::path& out) {
    std::string cmd = std::string(INRC2_CLI_EXE) + " simulate --sce " + quote(g.files[0]) + " --his " + quote(g.files[1]) +
                      " --weeks";
    for (int k : {4, 7, 5, 9}) cmd += " " + quote(g.files[ix(k)]);
    cmd += " --solver " + quote(INRC2_SOLVER_EXE) + " --outDir " + quote(out.string()) +
           " --cus --rand 5 6 7 8 --timeout 10";
    return cmd;
}

std::string total_line(const std::string& report) {
    const auto at = report.rfind("Total cost: ");
    return at == std::string::npos ? "" : report.substr(at);
}

// 6: a full simulated horizon with the bundled solver.
void end_to_end(Check& c, std::string& note) {
    const auto start = Clock::now();
    const fs::path dir = testing_support::scratch_dir("acceptance_e2e");
    const Generated g = generate_n005w4(dir / "data");
    const fs::path out = dir / "out";
    int status = 0;
    const std::string printed = testing_support::run_command(simulate_command(g, out), &status);
    c.expect(status == 0, "simulate exit " + std::to_string(status));

    for (int k = 0; k < 4; ++k) {
        for (const char* stem : {"sol-week", "result-week", "custom-week"}) {
            const std::string name = stem + std::to_string(k) + (std::string(stem) == "custom-week" ? "" : ".txt");
            c.expect(fs::exists(out / name), name + " missing");
        }
    }
    for (int k = 0; k <= 4; ++k)
        c.expect(fs::exists(out / ("history-week" + std::to_string(k) + ".txt")), "history-week" + std::to_string(k));
    c.expect(fs::exists(out / "Validator-results.txt"), "Validator-results.txt missing");
    if (c.failures) return;

    // Re-derive each history file from the previous one and the solution.
    const Scenario sc = parse_scenario(read_file(g.files[0]));
    History h = parse_history(read_file(g.files[1]), sc);
    c.expect(read_file((out / "history-week0.txt").string()) == read_file(g.files[1]), "history-week0 is not the input");
    std::string sols;
    for (int k = 0; k < 4; ++k) {
        const std::string sol = (out / ("sol-week" + std::to_string(k) + ".txt")).string();
        sols += " " + quote(sol);
        h = advance_history(h, parse_solution(read_file(sol), sc), sc);
        const std::string next = (out / ("history-week" + std::to_string(k + 1) + ".txt")).string();
        c.expect(parse_history(read_file(next), sc) == h, "history-week" + std::to_string(k + 1) + " differs");
    }

    std::string cmd = std::string(INRC2_CLI_EXE) + " validate --sce " + quote(g.files[0]) + " --his " + quote(g.files[1]) +
                      " --weeks";
    for (int k : {4, 7, 5, 9}) cmd += " " + quote(g.files[ix(k)]);
    const std::string validated = testing_support::run_command(cmd + " --sols" + sols, &status);
    c.expect(status == 0, "validate exit " + std::to_string(status));
    const std::string total = total_line(validated);
    c.expect(!total.empty(), "validate printed no total");
    c.expect(total_line(read_file((out / "Validator-results.txt").string())) == total, "validator file total differs");
    c.expect(total_line(printed) == total, "simulate total differs");
    const double t = seconds_since(start);
    c.expect(t < 120.0, "took " + std::to_string(t) + " s");
    note = total.substr(0, total.size() - 1) + " in " + std::to_string(t).substr(0, 4) + " s";
}

// 7: per-stage time limits.
void time_limits(Check& c, std::string& note) {
    c.expect(allowed_time(30) == 310, "30 nurses");
    c.expect(allowed_time(120) == 3010, "120 nurses");
    c.expect(allowed_time(5) == 10, "5 nurses");
    note = "10 / 310 / 3010 s";
}

// 8: identical seeds, identical solution files.
void reproducible(Check& c, std::string& note) {
    const fs::path dir = testing_support::scratch_dir("acceptance_repro");
    const Generated g = generate_n005w4(dir / "data");
    int status = 0;
    testing_support::run_command(simulate_command(g, dir / "a"), &status);
    c.expect(status == 0, "first run exit " + std::to_string(status));
    testing_support::run_command(simulate_command(g, dir / "b"), &status);
    c.expect(status == 0, "second run exit " + std::to_string(status));
    for (int k = 0; k < 4; ++k) {
        const std::string name = "sol-week" + std::to_string(k) + ".txt";
        c.expect(fs::exists(dir / "a" / name) &&
                     read_file((dir / "a" / name).string()) == read_file((dir / "b" / name).string()),
                 name + " differs");
    }
    note = "4 solution files compared";
}

}  // namespace

int main() {
    const std::vector<std::pair<std::string, std::function<void(Check&, std::string&)>>> criteria = {
        {"border evaluation rows", border_rows},
        {"adjudication example", adjudication_example},
        {"file formats and round trip", text_formats},
        {"history replay vs whole timeline", border_replay},
        {"capped solver vs enumeration", solver_optimum},
        {"end-to-end simulation", end_to_end},
        {"stage time limits", time_limits},
        {"seeded reproducibility", reproducible},
    };
    int failed = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        Check c;
        std::string note;
        try {
            criteria[i].second(c, note);
        } catch (const std::exception& e) {
            c.expect(false, std::string("exception: ") + e.what());
        }
        const bool pass = c.failures == 0;
        if (!pass) ++failed;
        std::cout << (pass ? "PASS" : "FAIL") << " " << i + 1 << " " << criteria[i].first << ": "
                  << (pass ? note : c.detail.str()) << std::endl;
    }
    return failed == 0 ? 0 : 1;
}
