// Command-line front end: validate, simulate, adjudicate, generate, screen.

#include <CLI11.hpp>

#include <iomanip>
#include <iostream>

#include "inrc2/adjudication.hpp"
#include "inrc2/evaluation.hpp"
#include "inrc2/generator.hpp"
#include "inrc2/report.hpp"
#include "inrc2/screen.hpp"
#include "inrc2/simulator.hpp"
#include "inrc2/textio.hpp"

using namespace inrc2;

namespace {

enum Exit { kOk = 0, kUsage = 1, kFormat = 2, kInternal = 3 };

// Thrown for bad input that parsed but does not fit together.
struct InputError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

int validate(const std::string& sce, const std::string& his, const std::vector<std::string>& week_files,
             const std::vector<std::string>& sol_files, bool verbose) {
    const Scenario sc = parse_scenario(read_file(sce));
    const History initial = parse_history(read_file(his), sc);
    if (week_files.size() != sol_files.size())
        throw InputError(std::to_string(week_files.size()) + " week files but " + std::to_string(sol_files.size()) +
                         " solution files");
    std::vector<WeekData> weeks;
    for (const auto& f : week_files) weeks.push_back(parse_week_data(read_file(f), sc));
    std::vector<Solution> sols;
    for (const auto& f : sol_files) sols.push_back(parse_solution(read_file(f), sc));
    const HorizonReport report = evaluate_horizon(sc, initial, weeks, sols);
    std::cout << format_report(sc, report, verbose);
    return kOk;
}

int simulate(SimulationConfig cfg, const std::string& timeout) {
    if (timeout == "none") {
        cfg.timeout.kind = TimeoutPolicy::Kind::None;
    } else if (timeout == "benchmark") {
        cfg.timeout.kind = TimeoutPolicy::Kind::Benchmark;
    } else {
        std::size_t used = 0;
        double secs = 0;
        try {
            secs = std::stod(timeout, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (used != timeout.size() || secs <= 0) throw CLI::ValidationError("--timeout", "expected none, benchmark or a positive number");
        cfg.timeout = {TimeoutPolicy::Kind::Fixed, secs};
    }

    const SimulationResult r = run_simulation(cfg);
    for (const auto& s : r.stages)
        std::cout << "week " << s.week_index << ": exit " << s.exit_status << ", " << std::fixed << std::setprecision(2)
                  << s.wall_seconds << " s, log " << s.log_path << '\n';
    if (r.failure) {
        std::cerr << "simulation stopped at week " << r.failure->week_index << ": "
                  << failure_kind_name(r.failure->kind) << ": " << r.failure->message << '\n';
        return kInternal;
    }
    if (r.report->hard_infeasible()) std::cout << "hard constraints violated\n";
    std::cout << "Total cost: " << r.report->total.total() << '\n';
    return kOk;
}

std::string show_rank(const Rational& r) { return r.den() == 1 ? std::to_string(r.num()) : r.to_fixed(1); }

int adjudicate(const std::vector<std::string>& files, int quota) {
    std::vector<ScoreMatrix> trials;
    for (const auto& f : files) trials.push_back(parse_score_table(read_file(f)));
    const ScoreMatrix& first = trials[0];
    std::size_t width = 0;
    for (const auto& p : first.participants) width = std::max(width, p.size());
    auto name = [&](int i) {
        std::string s = first.participants[static_cast<std::size_t>(i)];
        s.resize(width, ' ');
        return s;
    };

    if (trials.size() == 1) {
        const RankMatrix ranks = compute_ranks(first);
        const auto means = mean_ranks(ranks);
        std::cout << "Ranks\n";
        for (int i = 0; i < first.participant_count(); ++i) {
            std::cout << name(i);
            for (const auto& r : ranks[static_cast<std::size_t>(i)]) std::cout << ' ' << std::setw(4) << show_rank(r);
            std::cout << '\n';
        }
        std::cout << "\nMean ranks\n";
        for (int i = 0; i < first.participant_count(); ++i)
            std::cout << name(i) << ' ' << means[static_cast<std::size_t>(i)].to_fixed(2) << '\n';
        std::cout << "\nFinalists (by mean rank, then input order):";
        for (int i : select_finalists(means, quota)) std::cout << ' ' << first.participants[static_cast<std::size_t>(i)] << ';';
        std::cout << '\n';
        return kOk;
    }

    const FinalRanking f = final_ranking(trials);
    std::cout << "Mean rank over " << trials.size() << " trials\n";
    for (int i : f.order) std::cout << name(i) << ' ' << f.means[static_cast<std::size_t>(i)].to_fixed(2) << '\n';
    if (f.decided()) {
        std::cout << "\nWinner: " << first.participants[static_cast<std::size_t>(f.leaders[0])] << '\n';
    } else {
        std::cout << "\nTie for first between";
        for (int i : f.leaders) std::cout << ' ' << first.participants[static_cast<std::size_t>(i)] << ';';
        std::cout << " add a trial and adjudicate again\n";
    }
    return kOk;
}

int screen(const std::string& sce, const std::string& his, const std::string& week) {
    const Scenario sc = parse_scenario(read_file(sce));
    const History h = parse_history(read_file(his), sc);
    const WeekData w = parse_week_data(read_file(week), sc);
    const ScreenResult r = feasibility_screen(sc, w, h);
    if (r.pass)
        std::cout << "pass (necessary conditions only)\n";
    else
        std::cout << "fail (" << r.rule << "): " << r.reason << '\n';
    return kOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Multi-stage nurse rostering toolkit"};
    app.require_subcommand(1);

    auto* val = app.add_subcommand("validate", "Evaluate a multi-week solution");
    std::string v_sce, v_his;
    std::vector<std::string> v_weeks, v_sols;
    bool v_verbose = false;
    val->add_option("--sce", v_sce, "scenario file")->required();
    val->add_option("--his", v_his, "initial history file")->required();
    val->add_option("--weeks", v_weeks, "week data files in order")->required()->expected(1, -1);
    val->add_option("--sols", v_sols, "solution files in order")->required()->expected(1, -1);
    val->add_flag("--verbose", v_verbose, "per-nurse and per-week detail");

    auto* sim = app.add_subcommand("simulate", "Run a solver week by week and validate the result");
    SimulationConfig s_cfg;
    std::string s_run_dir, s_timeout = "none";
    sim->add_option("--sce", s_cfg.scenario_path, "scenario file")->required();
    sim->add_option("--his", s_cfg.initial_history_path, "initial history file")->required();
    sim->add_option("--weeks", s_cfg.week_paths, "week data files in order")->required()->expected(1, -1);
    sim->add_option("--solver", s_cfg.solver_path, "solver executable")->required();
    sim->add_option("--runDir", s_run_dir, "directory to run the solver in");
    sim->add_option("--outDir", s_cfg.out_dir, "output directory");
    sim->add_flag("--cus", s_cfg.use_custom, "pass custom files between weeks");
    sim->add_option("--rand", s_cfg.seeds, "one seed, or one per week")->expected(1, -1);
    sim->add_option("--timeout", s_timeout, "none, benchmark or seconds per week");

    auto* adj = app.add_subcommand("adjudicate", "Rank participants from score tables (one file per trial)");
    std::vector<std::string> a_files;
    int a_quota = 5;
    adj->add_option("tables", a_files, "CSV score tables")->required()->expected(1, -1)->check(CLI::ExistingFile);
    adj->add_option("--quota", a_quota, "number of finalists")->check(CLI::PositiveNumber);

    auto* gen = app.add_subcommand("generate", "Write a synthetic dataset");
    GeneratorConfig g_cfg;
    std::string g_out = ".";
    gen->add_option("--nurses", g_cfg.nurses, "number of nurses")->required();
    gen->add_option("--weeks", g_cfg.weeks, "number of weeks")->required();
    gen->add_option("--seed", g_cfg.seed, "random seed");
    auto* g_skills = gen->add_option("--skills", g_cfg.skill_count, "number of skills (1-4)");
    auto* g_shifts = gen->add_option("--shifts", g_cfg.shift_count, "number of shift types (1-4)");
    gen->add_option("--requests", g_cfg.request_density, "share of nurse-days with a shift-off request");
    gen->add_option("--out", g_out, "output directory");

    auto* scr = app.add_subcommand("screen", "Check necessary conditions for a feasible week");
    std::string c_sce, c_his, c_week;
    scr->add_option("--sce", c_sce, "scenario file")->required();
    scr->add_option("--his", c_his, "history file")->required();
    scr->add_option("--week", c_week, "week data file")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kOk : kUsage;
    }

    try {
        if (*val) return validate(v_sce, v_his, v_weeks, v_sols, v_verbose);
        if (*sim) {
            if (!s_run_dir.empty()) s_cfg.run_dir = s_run_dir;
            return simulate(s_cfg, s_timeout);
        }
        if (*adj) return adjudicate(a_files, a_quota);
        if (*gen) {
            if (!*g_skills) g_cfg.skill_count = std::min(g_cfg.nurses < 30 ? 2 : 4, std::max(g_cfg.nurses, 1));
            if (!*g_shifts) g_cfg.shift_count = g_cfg.nurses < 30 ? 3 : 4;
            if (const std::string why = g_cfg.problem(); !why.empty()) {
                std::cerr << "error: " << why << '\n';
                return kUsage;
            }
            for (const auto& p : write_dataset(generate_instance(g_cfg), g_out)) std::cout << p << '\n';
            return kOk;
        }
        if (*scr) return screen(c_sce, c_his, c_week);
    } catch (const CLI::ValidationError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kUsage;
    } catch (const SimulationError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kFormat;
    } catch (const FormatError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kFormat;
    } catch (const ModelError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kFormat;
    } catch (const EvaluationError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kFormat;
    } catch (const AdjudicationError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kFormat;
    } catch (const FileError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kFormat;
    } catch (const InputError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kFormat;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << '\n';
        return kInternal;
    }
    return kUsage;
}
