#pragma once

// Synthetic datasets in the usual file layout: one scenario, three
// initial histories and ten week-data files.

#include <cstdint>
#include <string>
#include <vector>

#include "inrc2/model.hpp"

namespace inrc2 {

struct GeneratorConfig {
    int nurses = 5;
    int weeks = 4;
    std::uint64_t seed = 0;
    int skill_count = 2;  // 1..4
    int shift_count = 3;  // 1..4
    double request_density = 0.1;

    // Returns a description of the first invalid field, or an empty string.
    std::string problem() const;
};

struct Dataset {
    Scenario scenario;
    std::vector<History> histories;  // 3
    std::vector<WeekData> weeks;     // 10
};

Dataset generate_instance(const GeneratorConfig& cfg);

// e.g. "n005w4"
std::string dataset_name(int nurses, int weeks);

// Writes Sc-<name>.txt, H0-<name>-<i>.txt and WD-<name>-<i>.txt into `dir`
// and returns the paths in that order.
std::vector<std::string> write_dataset(const Dataset& d, const std::string& dir);

}  // namespace inrc2
