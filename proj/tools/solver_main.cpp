// Baseline solver executable speaking the simulator's per-week contract.

#include <CLI11.hpp>

#include <iostream>

#include "inrc2/solver.hpp"
#include "inrc2/textio.hpp"

using namespace inrc2;

int main(int argc, char** argv) {
    CLI::App app{"Baseline single-week nurse rostering solver"};
    std::string sce, his, week, sol, cus_in, cus_out;
    std::uint64_t seed = 0;
    std::int64_t iterations = 0;
    double seconds = 0;
    app.add_option("--sce", sce, "scenario file")->required();
    app.add_option("--his", his, "history file")->required();
    app.add_option("--week", week, "week data file")->required();
    app.add_option("--sol", sol, "solution file to write")->required();
    app.add_option("--cusIn", cus_in, "custom file from the previous week");
    app.add_option("--cusOut", cus_out, "custom file for the next week");
    app.add_option("--rand", seed, "random seed");
    auto* iters_opt = app.add_option("--iters", iterations, "search iterations (default 20000 per nurse)")
                          ->check(CLI::NonNegativeNumber);
    auto* time_opt = app.add_option("--time", seconds, "wall-clock budget in seconds instead of an iteration cap")
                         ->check(CLI::PositiveNumber);
    time_opt->excludes(iters_opt);
    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        const Scenario sc = parse_scenario(read_file(sce));
        const History history = parse_history(read_file(his), sc);
        const WeekData data = parse_week_data(read_file(week), sc);
        if (history.scenario_id != sc.id || data.scenario_id != sc.id) {
            std::cerr << "error: input files belong to different scenarios\n";
            return 2;
        }
        if (history.week_index >= sc.num_weeks) {
            std::cerr << "error: the history already closes the horizon\n";
            return 2;
        }
        std::optional<CustomState> custom;
        if (!cus_in.empty()) custom = parse_custom(read_file(cus_in), sc);

        SolverConfig cfg;
        cfg.seed = seed;
        if (*time_opt)
            cfg.time_budget = seconds;
        else
            cfg.max_iterations = *iters_opt ? iterations : std::int64_t{20000} * sc.nurse_count();

        const WeekSolution r = solve_week(sc, history, data, cfg, custom);
        write_file(sol, write_solution(r.solution, sc));
        if (!cus_out.empty()) write_file(cus_out, write_custom(r.custom_out, sc));

        const CostReport cost = eval_week(sc, data, history, r.solution);
        std::cout << "week " << history.week_index << ": " << r.solution.assignments.size()
                  << " assignments, weekly cost " << cost.total() << '\n';
        if (!r.feasible) std::cerr << "warning: no roster meeting every hard constraint was found\n";
        return 0;
    } catch (const FormatError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const ModelError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const FileError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const SolverError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << '\n';
        return 3;
    }
}
