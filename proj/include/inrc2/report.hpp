#pragma once

// Text report of a multi-week evaluation: roster grid, hard violation
// counts and the cost per constraint type.

#include <string>
#include <vector>

#include "inrc2/evaluation.hpp"

namespace inrc2 {

// One display letter per shift type: the uppercased initial, or the
// shortest prefix telling colliding names apart.
std::vector<std::string> shift_letters(const Scenario& sc);

std::string roster_grid(const Scenario& sc, const std::vector<std::vector<WeekPattern>>& weeks);

std::string format_report(const Scenario& sc, const HorizonReport& report, bool verbose = false);

}  // namespace inrc2
