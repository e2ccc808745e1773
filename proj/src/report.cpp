#include "inrc2/report.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace inrc2 {

namespace {

std::size_t idx(int i) { return static_cast<std::size_t>(i); }

std::string upper(std::string s) {
    for (char& c : s) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
    return s;
}

void cost_lines(std::ostringstream& out, const SoftCosts& s, const std::string& indent) {
    out << indent << "Total assignment constraints: " << s.total_assignments << '\n'
        << indent << "Consecutive constraints: " << s.consecutive() << '\n'
        << indent << "Non working days constraints: " << s.consecutive_off << '\n'
        << indent << "Preferences: " << s.preferences << '\n'
        << indent << "Max working weekend: " << s.working_weekends << '\n'
        << indent << "Complete weekends: " << s.complete_weekend << '\n'
        << indent << "Optimal coverage constraints: " << s.optimal_coverage << '\n';
}

}  // namespace

std::vector<std::string> shift_letters(const Scenario& sc) {
    std::vector<std::string> names;
    for (const auto& s : sc.shift_types) names.push_back(upper(s.name));
    std::vector<std::string> letters;
    for (std::size_t i = 0; i < names.size(); ++i) {
        std::size_t len = 1;
        for (;;) {
            const std::string prefix = names[i].substr(0, len);
            bool clash = false;
            for (std::size_t j = 0; j < names.size(); ++j)
                if (j != i && names[j].substr(0, len) == prefix) clash = true;
            if (!clash || len >= names[i].size()) break;
            ++len;
        }
        letters.push_back(names[i].substr(0, len));
    }
    return letters;
}

std::string roster_grid(const Scenario& sc, const std::vector<std::vector<WeekPattern>>& weeks) {
    const std::vector<std::string> letters = shift_letters(sc);
    std::size_t width = 0;
    for (const auto& n : sc.nurses) width = std::max(width, n.name.size());
    ++width;

    std::ostringstream out;
    std::string header(width, ' ');
    for (std::size_t w = 0; w < weeks.size(); ++w) {
        if (w > 0) header += ' ';
        header += '|';
        for (int d = 0; d < kDaysPerWeek; ++d) header += std::string(1, day_name(d)[0]) + "|";
    }
    out << header << '\n' << std::string(header.size() + 2, '-') << '\n';
    for (NurseId n = 0; n < sc.nurse_count(); ++n) {
        std::string row = sc.nurses[idx(n)].name;
        row.resize(width, ' ');
        for (std::size_t w = 0; w < weeks.size(); ++w) {
            if (w > 0) row += ' ';
            row += '|';
            for (int d = 0; d < kDaysPerWeek; ++d) {
                const Slot& s = weeks[w][idx(n)][idx(d)];
                row += (s.working() ? letters[idx(s.shift)] : std::string("-")) + "|";
            }
        }
        out << row << '\n';
    }
    return out.str();
}

std::string format_report(const Scenario& sc, const HorizonReport& report, bool verbose) {
    std::ostringstream out;
    out << roster_grid(sc, report.patterns) << '\n';

    const HardCounts& h = report.total.hard;
    out << "Hard constraint violations\n--------------------------\n"
        << "Minimal coverage constraints: " << h.under_staffing << '\n'
        << "Required skill constraints: " << h.missing_skill << '\n'
        << "Illegal shift type succession constraints: " << h.illegal_successions << '\n'
        << "Single assignment per day: " << h.multiple_assignments << "\n\n";

    out << "Cost per constraint type\n------------------------\n";
    cost_lines(out, report.total.soft, "");

    if (verbose) {
        out << "\nCost per nurse\n--------------\n";
        for (NurseId n = 0; n < sc.nurse_count(); ++n) {
            out << sc.nurses[idx(n)].name << '\n';
            for (std::size_t w = 0; w < report.weekly.size(); ++w) {
                const auto& per = report.weekly[w].per_nurse;
                if (per.empty()) continue;
                const SoftCosts& s = per[idx(n)];
                out << "  week " << w << ": consecutive " << s.consecutive() << ", non working days "
                    << s.consecutive_off << ", preferences " << s.preferences << ", complete weekends "
                    << s.complete_weekend << '\n';
            }
            if (!report.counters.per_nurse.empty()) {
                const SoftCosts& s = report.counters.per_nurse[idx(n)];
                out << "  horizon: total assignments " << s.total_assignments << ", working weekends "
                    << s.working_weekends << '\n';
            }
        }
        out << "\nCost per week\n-------------\n";
        for (std::size_t w = 0; w < report.weekly.size(); ++w) {
            out << "week " << w << '\n';
            cost_lines(out, report.weekly[w].soft, "  ");
        }
    }

    out << "\n------------------------\nTotal cost: " << report.total.total() << '\n';
    return out.str();
}

}  // namespace inrc2
