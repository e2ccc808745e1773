#pragma once

// Cheap necessary conditions for a week to admit a roster meeting every
// minimum requirement. Passing does not prove feasibility.

#include <string>

#include "inrc2/model.hpp"

namespace inrc2 {

struct ScreenResult {
    bool pass = true;
    char rule = 0;  // 'a'..'d' when failed
    std::string reason;
};

// (a) a (day, shift, skill) minimum exceeds the nurses holding the skill;
// (b) a day's minima exceed the number of nurses;
// (c) Monday minima cannot be met by nurses whose last shift allows them;
// (d) no one-shift-per-nurse matching covers a day's minima.
ScreenResult feasibility_screen(const Scenario& sc, const WeekData& week, const History& history);

}  // namespace inrc2
