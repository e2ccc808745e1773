#pragma once

// Multi-stage driver: runs an external solver once per week, chains the
// history files and validates the whole horizon at the end.

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "inrc2/evaluation.hpp"

namespace inrc2 {

struct TimeoutPolicy {
    enum class Kind { None, Benchmark, Fixed };
    Kind kind = Kind::None;
    double seconds = 0;  // Fixed only
};

struct SimulationConfig {
    std::string scenario_path;
    std::string initial_history_path;
    std::vector<std::string> week_paths;
    std::string solver_path;
    std::optional<std::string> run_dir;
    std::string out_dir = ".";
    bool use_custom = false;
    std::vector<std::uint64_t> seeds;  // none, one for every call, or one per week
    TimeoutPolicy timeout;
};

struct StageOutcome {
    int week_index = 0;
    int exit_status = 0;  // -1 when killed or not started
    double wall_seconds = 0;
    std::string solution_path;
    std::string history_path;  // history after this week
    std::string log_path;
    std::optional<std::string> custom_path;
};

struct StageFailure {
    enum class Kind { SolverCrashed, SolutionUnparsable, Timeout, ScenarioMismatch };
    Kind kind;
    int week_index;
    std::string message;
};

struct SimulationResult {
    std::vector<StageOutcome> stages;
    std::optional<HorizonReport> report;  // set when every stage succeeded
    std::optional<StageFailure> failure;
};

// Bad configuration or unreadable inputs, raised before any solver call.
class SimulationError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Seconds per stage: 10 + 30 * (nurses - 20), floored at 10.
int allowed_time(int nurses);

std::string stage_file(const SimulationConfig& cfg, const std::string& stem, int week);

// Solver arguments for one week; element 0 is the executable.
std::vector<std::string> build_solver_command(const SimulationConfig& cfg, int week_index,
                                              const std::string& history_path,
                                              const std::optional<std::string>& custom_in);

SimulationResult run_simulation(const SimulationConfig& cfg);

std::string failure_kind_name(StageFailure::Kind kind);

}  // namespace inrc2
