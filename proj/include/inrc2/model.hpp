#pragma once

// Domain types for the multi-stage nurse rostering problem. Every entity is
// addressed by a dense index; names only matter for file I/O.

#include <array>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace inrc2 {

inline constexpr int kDaysPerWeek = 7;

using NurseId = int;
using ShiftId = int;
using SkillId = int;
using ContractId = int;

// Sentinel shift ids. kNoShift is a day off ("None" in history files);
// kAnyShift only appears in shift-off requests ("Any").
inline constexpr ShiftId kNoShift = -1;
inline constexpr ShiftId kAnyShift = -2;

inline constexpr std::string_view kNoneToken = "None";
inline constexpr std::string_view kAnyToken = "Any";

enum class Day : int { Mon = 0, Tue, Wed, Thu, Fri, Sat, Sun };

std::string_view day_name(int day);
std::optional<int> parse_day(std::string_view token);

// Inclusive integer range.
struct Interval {
    int min = 0;
    int max = 0;

    bool contains(int v) const { return v >= min && v <= max; }
    friend bool operator==(const Interval&, const Interval&) = default;
};

struct ShiftType {
    std::string name;
    Interval consecutive;

    friend bool operator==(const ShiftType&, const ShiftType&) = default;
};

// Square boolean matrix: forbids(a, b) means shift b may not follow shift a
// on the next day.
class SuccessionMatrix {
public:
    SuccessionMatrix() = default;
    explicit SuccessionMatrix(int shift_count)
        : size_(shift_count), cells_(static_cast<std::size_t>(shift_count * shift_count), 0) {}

    int size() const { return size_; }
    bool forbids(ShiftId prev, ShiftId next) const {
        if (prev < 0 || next < 0) return false;
        return cells_[static_cast<std::size_t>(prev * size_ + next)] != 0;
    }
    void forbid(ShiftId prev, ShiftId next) { cells_[static_cast<std::size_t>(prev * size_ + next)] = 1; }
    std::vector<ShiftId> forbidden_after(ShiftId prev) const;

    friend bool operator==(const SuccessionMatrix&, const SuccessionMatrix&) = default;

private:
    int size_ = 0;
    std::vector<char> cells_;
};

struct Contract {
    std::string name;
    Interval total_assignments;
    Interval consecutive_work;
    Interval consecutive_off;
    int max_working_weekends = 0;
    bool complete_weekend = false;

    friend bool operator==(const Contract&, const Contract&) = default;
};

struct Nurse {
    std::string name;
    ContractId contract = 0;
    std::vector<SkillId> skills;  // declaration order, no duplicates

    bool has_skill(SkillId s) const;
    friend bool operator==(const Nurse&, const Nurse&) = default;
};

struct Scenario {
    std::string id;
    int num_weeks = 0;
    std::vector<std::string> skills;
    std::vector<ShiftType> shift_types;
    SuccessionMatrix successions;
    std::vector<Contract> contracts;
    std::vector<Nurse> nurses;

    int nurse_count() const { return static_cast<int>(nurses.size()); }
    int shift_count() const { return static_cast<int>(shift_types.size()); }
    int skill_count() const { return static_cast<int>(skills.size()); }
    const Contract& contract_of(NurseId n) const { return contracts[static_cast<std::size_t>(nurses[static_cast<std::size_t>(n)].contract)]; }

    std::optional<NurseId> find_nurse(std::string_view name) const;
    std::optional<ShiftId> find_shift(std::string_view name) const;
    std::optional<SkillId> find_skill(std::string_view name) const;
    std::optional<ContractId> find_contract(std::string_view name) const;

    friend bool operator==(const Scenario&, const Scenario&) = default;
};

struct Coverage {
    int minimum = 0;
    int optimal = 0;
    friend bool operator==(const Coverage&, const Coverage&) = default;
};

struct Requirement {
    ShiftId shift = 0;
    SkillId skill = 0;
    std::array<Coverage, kDaysPerWeek> per_day{};
    friend bool operator==(const Requirement&, const Requirement&) = default;
};

struct ShiftOffRequest {
    NurseId nurse = 0;
    ShiftId shift = kAnyShift;  // a shift id or kAnyShift
    int day = 0;
    friend bool operator==(const ShiftOffRequest&, const ShiftOffRequest&) = default;
};

struct WeekData {
    std::string scenario_id;
    std::vector<Requirement> requirements;
    std::vector<ShiftOffRequest> requests;
    friend bool operator==(const WeekData&, const WeekData&) = default;
};

// Dense (shift, skill, day) view of a week's requirements; pairs without a
// requirement line demand nothing.
class CoverageTable {
public:
    CoverageTable(const Scenario& sc, const WeekData& week);

    const Coverage& at(ShiftId shift, SkillId skill, int day) const {
        return cells_[index(shift, skill, day)];
    }
    int shift_count() const { return shifts_; }
    int skill_count() const { return skills_; }

private:
    std::size_t index(ShiftId shift, SkillId skill, int day) const {
        return static_cast<std::size_t>((shift * skills_ + skill) * kDaysPerWeek + day);
    }
    int shifts_;
    int skills_;
    std::vector<Coverage> cells_;
};

struct NurseHistory {
    NurseId nurse = 0;
    int total_assignments = 0;
    int total_weekends = 0;
    ShiftId last_shift = kNoShift;
    int consec_same_shift = 0;
    int consec_work = 0;
    int consec_off = 0;

    // Returns a description of the first broken border invariant, if any.
    std::optional<std::string> invariant_violation() const;
    friend bool operator==(const NurseHistory&, const NurseHistory&) = default;
};

struct History {
    int week_index = 0;
    std::string scenario_id;
    std::vector<NurseHistory> entries;  // indexed by nurse id
    friend bool operator==(const History&, const History&) = default;
};

struct Assignment {
    NurseId nurse = 0;
    int day = 0;
    ShiftId shift = 0;
    SkillId skill = 0;
    friend bool operator==(const Assignment&, const Assignment&) = default;
    friend auto operator<=>(const Assignment&, const Assignment&) = default;
};

struct Solution {
    int week_index = 0;
    std::string scenario_id;
    std::vector<Assignment> assignments;
    friend bool operator==(const Solution&, const Solution&) = default;
};

struct Weights {
    int s1_optimal_coverage = 30;
    int s2_consecutive_shift = 15;
    int s2_consecutive_work = 30;
    int s3_consecutive_off = 30;
    int s4_preference = 10;
    int s5_complete_weekend = 30;
    int s6_total_assignments = 20;
    int s7_total_weekends = 30;
};

struct HardCounts {
    std::int64_t multiple_assignments = 0;  // H1
    std::int64_t under_staffing = 0;        // H2
    std::int64_t illegal_successions = 0;   // H3
    std::int64_t missing_skill = 0;         // H4

    bool feasible() const {
        return multiple_assignments == 0 && under_staffing == 0 && illegal_successions == 0 && missing_skill == 0;
    }
    std::int64_t total() const { return multiple_assignments + under_staffing + illegal_successions + missing_skill; }
    HardCounts& operator+=(const HardCounts& o);
    friend bool operator==(const HardCounts&, const HardCounts&) = default;
};

// Weighted soft costs, one field per constraint type.
struct SoftCosts {
    std::int64_t optimal_coverage = 0;      // S1
    std::int64_t consecutive_shift = 0;     // S2, per shift type
    std::int64_t consecutive_work = 0;      // S2, working days
    std::int64_t consecutive_off = 0;       // S3
    std::int64_t preferences = 0;           // S4
    std::int64_t complete_weekend = 0;      // S5
    std::int64_t total_assignments = 0;     // S6
    std::int64_t working_weekends = 0;      // S7

    std::int64_t consecutive() const { return consecutive_shift + consecutive_work; }
    std::int64_t total() const {
        return optimal_coverage + consecutive_shift + consecutive_work + consecutive_off + preferences +
               complete_weekend + total_assignments + working_weekends;
    }
    SoftCosts& operator+=(const SoftCosts& o);
    friend bool operator==(const SoftCosts&, const SoftCosts&) = default;
};

struct CostReport {
    HardCounts hard;
    SoftCosts soft;
    std::vector<SoftCosts> per_nurse;  // S2..S7 broken down by nurse; empty if not tracked

    std::int64_t total() const { return soft.total(); }
    CostReport& operator+=(const CostReport& o);
};

// Unvalidated scenario as read from a file: every reference is a name.
struct RawScenario {
    struct Shift {
        std::string name;
        int min_consecutive = 0;
        int max_consecutive = 0;
    };
    struct Succession {
        std::string preceding;
        std::vector<std::string> succeeding;
    };
    struct RawContract {
        std::string name;
        Interval total_assignments;
        Interval consecutive_work;
        Interval consecutive_off;
        int max_working_weekends = 0;
        bool complete_weekend = false;
    };
    struct RawNurse {
        std::string name;
        std::string contract;
        std::vector<std::string> skills;
    };

    std::string id;
    int num_weeks = 0;
    std::vector<std::string> skills;
    std::vector<Shift> shift_types;
    std::vector<Succession> successions;
    std::vector<RawContract> contracts;
    std::vector<RawNurse> nurses;
};

class ModelError : public std::runtime_error {
public:
    enum class Kind { UnknownReference, DuplicateName, BadInterval, ReservedName, MissingNurse, InvalidValue };

    ModelError(Kind kind, const std::string& message) : std::runtime_error(message), kind_(kind) {}
    Kind kind() const { return kind_; }

private:
    Kind kind_;
};

// Resolves names to dense ids and checks every scenario invariant.
Scenario resolve_scenario(const RawScenario& raw);

}  // namespace inrc2
