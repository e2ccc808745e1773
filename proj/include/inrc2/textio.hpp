#pragma once

// Reader and writer for the plain-text instance formats: scenario, week
// data, history and solution files.

#include <stdexcept>
#include <string>
#include <string_view>

#include "inrc2/model.hpp"

namespace inrc2 {

enum class FileKind { Scenario, Week, History, Solution };

std::string_view file_kind_name(FileKind kind);

class FormatError : public std::runtime_error {
public:
    FormatError(FileKind kind, int line, const std::string& message);

    FileKind file_kind() const { return kind_; }
    int line() const { return line_; }  // 1-based; 0 when the problem is end of input
    const std::string& message() const { return message_; }

private:
    FileKind kind_;
    int line_;
    std::string message_;
};

Scenario parse_scenario(std::string_view text);
// Reference errors (unknown nurse, shift, ...) surface as ModelError.
WeekData parse_week_data(std::string_view text, const Scenario& sc);
History parse_history(std::string_view text, const Scenario& sc);
Solution parse_solution(std::string_view text, const Scenario& sc);

std::string write_scenario(const Scenario& sc);
std::string write_week_data(const WeekData& week, const Scenario& sc);
std::string write_history(const History& h, const Scenario& sc);
std::string write_solution(const Solution& s, const Scenario& sc);

// Unreadable or unwritable file.
class FileError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path);
void write_file(const std::string& path, std::string_view content);

}  // namespace inrc2
