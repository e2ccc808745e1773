#include "inrc2/model.hpp"

#include <algorithm>
#include <unordered_map>

namespace inrc2 {

namespace {

constexpr std::array<std::string_view, kDaysPerWeek> kDayNames = {"Mon", "Tue", "Wed", "Thu", "Fri", "Sat", "Sun"};

template <typename Range, typename Proj>
std::optional<int> find_by_name(const Range& items, std::string_view name, Proj proj) {
    for (std::size_t i = 0; i < items.size(); ++i)
        if (proj(items[i]) == name) return static_cast<int>(i);
    return std::nullopt;
}

bool is_reserved(std::string_view name) { return name == kAnyToken || name == kNoneToken; }

void check_interval(const Interval& iv, int floor, const std::string& what) {
    if (iv.min < floor || iv.min > iv.max)
        throw ModelError(ModelError::Kind::BadInterval,
                         what + ": bad interval (" + std::to_string(iv.min) + "," + std::to_string(iv.max) + ")");
}

// Maps name -> index, rejecting duplicates and empty names.
class NameIndex {
public:
    NameIndex(const std::string& kind) : kind_(kind) {}

    int add(const std::string& name) {
        if (name.empty()) throw ModelError(ModelError::Kind::InvalidValue, "empty " + kind_ + " name");
        const int id = static_cast<int>(ids_.size());
        if (!ids_.emplace(name, id).second)
            throw ModelError(ModelError::Kind::DuplicateName, "duplicate " + kind_ + " '" + name + "'");
        return id;
    }
    int lookup(const std::string& name, const std::string& context) const {
        auto it = ids_.find(name);
        if (it == ids_.end())
            throw ModelError(ModelError::Kind::UnknownReference,
                             context + ": unknown " + kind_ + " '" + name + "'");
        return it->second;
    }

private:
    std::string kind_;
    std::unordered_map<std::string, int> ids_;
};

}  // namespace

std::string_view day_name(int day) { return kDayNames.at(static_cast<std::size_t>(day)); }

std::optional<int> parse_day(std::string_view token) {
    for (int d = 0; d < kDaysPerWeek; ++d)
        if (kDayNames[static_cast<std::size_t>(d)] == token) return d;
    return std::nullopt;
}

std::vector<ShiftId> SuccessionMatrix::forbidden_after(ShiftId prev) const {
    std::vector<ShiftId> out;
    for (ShiftId next = 0; next < size_; ++next)
        if (forbids(prev, next)) out.push_back(next);
    return out;
}

bool Nurse::has_skill(SkillId s) const { return std::find(skills.begin(), skills.end(), s) != skills.end(); }

std::optional<NurseId> Scenario::find_nurse(std::string_view name) const {
    return find_by_name(nurses, name, [](const Nurse& n) -> const std::string& { return n.name; });
}
std::optional<ShiftId> Scenario::find_shift(std::string_view name) const {
    return find_by_name(shift_types, name, [](const ShiftType& s) -> const std::string& { return s.name; });
}
std::optional<SkillId> Scenario::find_skill(std::string_view name) const {
    return find_by_name(skills, name, [](const std::string& s) -> const std::string& { return s; });
}
std::optional<ContractId> Scenario::find_contract(std::string_view name) const {
    return find_by_name(contracts, name, [](const Contract& c) -> const std::string& { return c.name; });
}

CoverageTable::CoverageTable(const Scenario& sc, const WeekData& week)
    : shifts_(sc.shift_count()),
      skills_(sc.skill_count()),
      cells_(static_cast<std::size_t>(shifts_ * skills_ * kDaysPerWeek)) {
    for (const auto& req : week.requirements)
        for (int d = 0; d < kDaysPerWeek; ++d) cells_[index(req.shift, req.skill, d)] = req.per_day[static_cast<std::size_t>(d)];
}

std::optional<std::string> NurseHistory::invariant_violation() const {
    if (total_assignments < 0 || total_weekends < 0 || consec_same_shift < 0 || consec_work < 0 || consec_off < 0)
        return "negative counter";
    if (last_shift == kNoShift) {
        if (consec_same_shift != 0 || consec_work != 0)
            return "consecutive shift and work counters must be 0 when the last shift is None";
        return std::nullopt;
    }
    if (consec_off != 0) return "consecutive days-off counter must be 0 when a shift was worked last";
    if (consec_same_shift < 1) return "consecutive same-shift counter must be at least 1 after a worked shift";
    if (consec_work < consec_same_shift) return "consecutive work counter smaller than same-shift counter";
    return std::nullopt;
}

HardCounts& HardCounts::operator+=(const HardCounts& o) {
    multiple_assignments += o.multiple_assignments;
    under_staffing += o.under_staffing;
    illegal_successions += o.illegal_successions;
    missing_skill += o.missing_skill;
    return *this;
}

SoftCosts& SoftCosts::operator+=(const SoftCosts& o) {
    optimal_coverage += o.optimal_coverage;
    consecutive_shift += o.consecutive_shift;
    consecutive_work += o.consecutive_work;
    consecutive_off += o.consecutive_off;
    preferences += o.preferences;
    complete_weekend += o.complete_weekend;
    total_assignments += o.total_assignments;
    working_weekends += o.working_weekends;
    return *this;
}

CostReport& CostReport::operator+=(const CostReport& o) {
    hard += o.hard;
    soft += o.soft;
    if (per_nurse.size() < o.per_nurse.size()) per_nurse.resize(o.per_nurse.size());
    for (std::size_t i = 0; i < o.per_nurse.size(); ++i) per_nurse[i] += o.per_nurse[i];
    return *this;
}

Scenario resolve_scenario(const RawScenario& raw) {
    Scenario sc;
    sc.id = raw.id;
    if (sc.id.empty()) throw ModelError(ModelError::Kind::InvalidValue, "empty scenario id");
    if (raw.num_weeks < 1)
        throw ModelError(ModelError::Kind::InvalidValue, "number of weeks must be at least 1");
    sc.num_weeks = raw.num_weeks;

    NameIndex skills("skill");
    for (const auto& s : raw.skills) skills.add(s);
    sc.skills = raw.skills;

    NameIndex shifts("shift type");
    for (const auto& s : raw.shift_types) {
        if (is_reserved(s.name))
            throw ModelError(ModelError::Kind::ReservedName, "'" + s.name + "' is reserved and cannot name a shift type");
        shifts.add(s.name);
        Interval iv{s.min_consecutive, s.max_consecutive};
        check_interval(iv, 1, "shift type " + s.name);
        sc.shift_types.push_back({s.name, iv});
    }

    sc.successions = SuccessionMatrix(sc.shift_count());
    for (const auto& succ : raw.successions) {
        const ShiftId prev = shifts.lookup(succ.preceding, "forbidden succession");
        for (const auto& name : succ.succeeding) {
            const ShiftId next = shifts.lookup(name, "forbidden succession after " + succ.preceding);
            if (sc.successions.forbids(prev, next))
                throw ModelError(ModelError::Kind::DuplicateName,
                                 "duplicate forbidden succession " + succ.preceding + " -> " + name);
            sc.successions.forbid(prev, next);
        }
    }

    NameIndex contracts("contract");
    for (const auto& c : raw.contracts) {
        contracts.add(c.name);
        check_interval(c.total_assignments, 0, "contract " + c.name + " total assignments");
        check_interval(c.consecutive_work, 0, "contract " + c.name + " consecutive working days");
        check_interval(c.consecutive_off, 0, "contract " + c.name + " consecutive days off");
        if (c.max_working_weekends < 0)
            throw ModelError(ModelError::Kind::InvalidValue, "contract " + c.name + ": negative weekend limit");
        sc.contracts.push_back({c.name, c.total_assignments, c.consecutive_work, c.consecutive_off,
                                c.max_working_weekends, c.complete_weekend});
    }

    NameIndex nurses("nurse");
    for (const auto& n : raw.nurses) {
        nurses.add(n.name);
        Nurse nurse;
        nurse.name = n.name;
        nurse.contract = contracts.lookup(n.contract, "nurse " + n.name);
        if (n.skills.empty())
            throw ModelError(ModelError::Kind::InvalidValue, "nurse " + n.name + " has no skills");
        for (const auto& s : n.skills) {
            const SkillId id = skills.lookup(s, "nurse " + n.name);
            if (nurse.has_skill(id))
                throw ModelError(ModelError::Kind::DuplicateName, "nurse " + n.name + " lists skill " + s + " twice");
            nurse.skills.push_back(id);
        }
        sc.nurses.push_back(std::move(nurse));
    }
    return sc;
}

}  // namespace inrc2
