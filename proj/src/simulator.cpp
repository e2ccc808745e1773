#include "inrc2/simulator.hpp"

#include <fcntl.h>
#include <signal.h>
#include <sys/wait.h>
#include <unistd.h>

#include <algorithm>
#include <chrono>
#include <filesystem>
#include <thread>

#include "inrc2/report.hpp"
#include "inrc2/textio.hpp"

namespace inrc2 {

namespace fs = std::filesystem;

namespace {

std::string absolute(const std::string& path) { return fs::absolute(path).lexically_normal().string(); }

struct ProcessResult {
    int exit_status = -1;
    bool timed_out = false;
    double seconds = 0;
};

ProcessResult run_process(const std::vector<std::string>& argv, const std::optional<std::string>& dir,
                          const std::string& out_path, const std::string& err_path, std::optional<double> limit) {
    std::vector<char*> args;
    for (const auto& a : argv) args.push_back(const_cast<char*>(a.c_str()));
    args.push_back(nullptr);

    const auto start = std::chrono::steady_clock::now();
    const pid_t pid = fork();
    if (pid < 0) throw SimulationError("cannot start the solver process");
    if (pid == 0) {
        const int out = open(out_path.c_str(), O_WRONLY | O_CREAT | O_TRUNC, 0644);
        const int err = open(err_path.c_str(), O_WRONLY | O_CREAT | O_TRUNC, 0644);
        if (out < 0 || err < 0) _exit(126);
        dup2(out, STDOUT_FILENO);
        dup2(err, STDERR_FILENO);
        close(out);
        close(err);
        if (dir && chdir(dir->c_str()) != 0) _exit(126);
        execvp(args[0], args.data());
        _exit(127);
    }

    ProcessResult r;
    int status = 0;
    for (;;) {
        const pid_t done = waitpid(pid, &status, WNOHANG);
        const std::chrono::duration<double> spent = std::chrono::steady_clock::now() - start;
        r.seconds = spent.count();
        if (done == pid) break;
        if (limit && r.seconds > *limit) {
            kill(pid, SIGKILL);
            waitpid(pid, &status, 0);
            r.timed_out = true;
            return r;
        }
        std::this_thread::sleep_for(std::chrono::milliseconds(5));
    }
    r.exit_status = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

}  // namespace

int allowed_time(int nurses) { return std::max(10, 10 + 30 * (nurses - 20)); }

std::string failure_kind_name(StageFailure::Kind kind) {
    switch (kind) {
        case StageFailure::Kind::SolverCrashed: return "SolverCrashed";
        case StageFailure::Kind::SolutionUnparsable: return "SolutionUnparsable";
        case StageFailure::Kind::Timeout: return "Timeout";
        case StageFailure::Kind::ScenarioMismatch: return "ScenarioMismatch";
    }
    return "?";
}

std::string stage_file(const SimulationConfig& cfg, const std::string& stem, int week) {
    return absolute((fs::path(cfg.out_dir) / (stem + std::to_string(week))).string());
}

std::vector<std::string> build_solver_command(const SimulationConfig& cfg, int week_index,
                                              const std::string& history_path,
                                              const std::optional<std::string>& custom_in) {
    // A bare program name is left for PATH lookup; anything with a slash is
    // pinned before the solver changes directory.
    const bool bare = cfg.solver_path.find('/') == std::string::npos;
    std::vector<std::string> argv{bare ? cfg.solver_path : absolute(cfg.solver_path),
                                  "--sce", absolute(cfg.scenario_path),
                                  "--his", absolute(history_path),
                                  "--week", absolute(cfg.week_paths[static_cast<std::size_t>(week_index)]),
                                  "--sol", stage_file(cfg, "sol-week", week_index) + ".txt"};
    if (cfg.use_custom && week_index > 0 && custom_in) {
        argv.push_back("--cusIn");
        argv.push_back(absolute(*custom_in));
    }
    if (cfg.use_custom) {
        argv.push_back("--cusOut");
        argv.push_back(stage_file(cfg, "custom-week", week_index));
    }
    if (!cfg.seeds.empty()) {
        const std::uint64_t seed = cfg.seeds.size() == 1 ? cfg.seeds[0] : cfg.seeds[static_cast<std::size_t>(week_index)];
        argv.push_back("--rand");
        argv.push_back(std::to_string(seed));
    }
    return argv;
}

SimulationResult run_simulation(const SimulationConfig& cfg) {
    Scenario sc;
    History history;
    std::vector<WeekData> weeks;
    try {
        sc = parse_scenario(read_file(cfg.scenario_path));
        history = parse_history(read_file(cfg.initial_history_path), sc);
        for (const auto& p : cfg.week_paths) weeks.push_back(parse_week_data(read_file(p), sc));
    } catch (const std::exception& e) {
        throw SimulationError(std::string("cannot load the instance: ") + e.what());
    }
    const int n = static_cast<int>(cfg.week_paths.size());
    if (n != sc.num_weeks)
        throw SimulationError("scenario has " + std::to_string(sc.num_weeks) + " weeks but " + std::to_string(n) +
                              " week files were given");
    if (cfg.seeds.size() > 1 && static_cast<int>(cfg.seeds.size()) != n)
        throw SimulationError("give one seed, or one seed per week");
    if (history.week_index != 0) throw SimulationError("the initial history must precede week 0");
    if (history.scenario_id != sc.id) throw SimulationError("the initial history belongs to another scenario");
    for (const auto& w : weeks)
        if (w.scenario_id != sc.id) throw SimulationError("a week file belongs to another scenario");
    if (cfg.solver_path.find('/') != std::string::npos && access(cfg.solver_path.c_str(), X_OK) != 0)
        throw SimulationError("solver not executable: " + cfg.solver_path);
    if (cfg.run_dir && !fs::is_directory(*cfg.run_dir)) throw SimulationError("no such directory: " + *cfg.run_dir);

    fs::create_directories(cfg.out_dir);
    const std::string history0 = stage_file(cfg, "history-week", 0) + ".txt";
    if (absolute(cfg.initial_history_path) != history0)
        fs::copy_file(cfg.initial_history_path, history0, fs::copy_options::overwrite_existing);

    std::optional<double> limit;
    if (cfg.timeout.kind == TimeoutPolicy::Kind::Benchmark) limit = allowed_time(sc.nurse_count());
    if (cfg.timeout.kind == TimeoutPolicy::Kind::Fixed) limit = cfg.timeout.seconds;

    SimulationResult result;
    std::vector<Solution> solutions;
    for (int k = 0; k < n; ++k) {
        const std::string his_in = k == 0 ? cfg.initial_history_path : stage_file(cfg, "history-week", k) + ".txt";
        std::optional<std::string> custom_in;
        if (k > 0) custom_in = stage_file(cfg, "custom-week", k - 1);
        const auto argv = build_solver_command(cfg, k, his_in, custom_in);

        StageOutcome stage;
        stage.week_index = k;
        stage.solution_path = stage_file(cfg, "sol-week", k) + ".txt";
        stage.history_path = stage_file(cfg, "history-week", k + 1) + ".txt";
        stage.log_path = stage_file(cfg, "result-week", k) + ".txt";
        if (cfg.use_custom) stage.custom_path = stage_file(cfg, "custom-week", k);

        std::error_code ignored;
        fs::remove(stage.solution_path, ignored);
        const std::string out_tmp = stage.log_path + ".stdout";
        const std::string err_tmp = stage.log_path + ".stderr";
        const ProcessResult run = run_process(argv, cfg.run_dir, out_tmp, err_tmp, limit);
        stage.exit_status = run.exit_status;
        stage.wall_seconds = run.seconds;
        {
            std::string log = fs::exists(out_tmp) ? read_file(out_tmp) : "";
            if (!log.empty() && log.back() != '\n') log += '\n';
            log += "---- stderr ----\n";
            if (fs::exists(err_tmp)) log += read_file(err_tmp);
            write_file(stage.log_path, log);
            fs::remove(out_tmp, ignored);
            fs::remove(err_tmp, ignored);
        }
        result.stages.push_back(stage);

        auto fail = [&](StageFailure::Kind kind, const std::string& message) {
            result.failure = StageFailure{kind, k, message};
            return result;
        };
        if (run.timed_out) return fail(StageFailure::Kind::Timeout, "solver exceeded " + std::to_string(*limit) + " s");
        if (run.exit_status != 0)
            return fail(StageFailure::Kind::SolverCrashed, "solver exited with status " + std::to_string(run.exit_status));

        Solution sol;
        try {
            sol = parse_solution(read_file(stage.solution_path), sc);
        } catch (const std::exception& e) {
            return fail(StageFailure::Kind::SolutionUnparsable, e.what());
        }
        if (sol.scenario_id != sc.id)
            return fail(StageFailure::Kind::ScenarioMismatch, "solution names scenario " + sol.scenario_id);
        if (sol.week_index != k)
            return fail(StageFailure::Kind::ScenarioMismatch, "solution is for week " + std::to_string(sol.week_index));

        // Double bookings are reported by the final validation, not repaired.
        history = advance_history(history, build_patterns_lenient(sc, sol));
        write_file(stage.history_path, write_history(history, sc));
        solutions.push_back(std::move(sol));
    }

    const History initial = parse_history(read_file(cfg.initial_history_path), sc);
    result.report = evaluate_horizon(sc, initial, weeks, solutions);
    write_file((fs::path(cfg.out_dir) / "Validator-results.txt").string(), format_report(sc, *result.report));
    return result;
}

}  // namespace inrc2
