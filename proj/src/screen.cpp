#include "inrc2/screen.hpp"

#include <functional>
#include <vector>

namespace inrc2 {

namespace {

std::size_t idx(int i) { return static_cast<std::size_t>(i); }

ScreenResult fail(char rule, std::string reason) { return {false, rule, std::move(reason)}; }

std::string cell_name(const Scenario& sc, ShiftId s, SkillId k, int d) {
    return sc.shift_types[idx(s)].name + "/" + sc.skills[idx(k)] + " on " + std::string(day_name(d));
}

bool can_work(const Scenario& sc, const History& history, NurseId n, ShiftId s, SkillId k, int d) {
    if (!sc.nurses[idx(n)].has_skill(k)) return false;
    return d != 0 || !sc.successions.forbids(history.entries[idx(n)].last_shift, s);
}

}  // namespace

ScreenResult feasibility_screen(const Scenario& sc, const WeekData& week, const History& history) {
    const CoverageTable cov(sc, week);

    for (int d = 0; d < kDaysPerWeek; ++d)
        for (ShiftId s = 0; s < sc.shift_count(); ++s)
            for (SkillId k = 0; k < sc.skill_count(); ++k) {
                int holders = 0;
                for (const Nurse& n : sc.nurses) holders += n.has_skill(k) ? 1 : 0;
                if (cov.at(s, k, d).minimum > holders)
                    return fail('a', cell_name(sc, s, k, d) + " needs " + std::to_string(cov.at(s, k, d).minimum) +
                                         " nurses but only " + std::to_string(holders) + " have the skill");
            }

    for (int d = 0; d < kDaysPerWeek; ++d) {
        int total = 0;
        for (ShiftId s = 0; s < sc.shift_count(); ++s)
            for (SkillId k = 0; k < sc.skill_count(); ++k) total += cov.at(s, k, d).minimum;
        if (total > sc.nurse_count())
            return fail('b', std::string(day_name(d)) + " needs " + std::to_string(total) + " nurses but there are " +
                                 std::to_string(sc.nurse_count()));
    }

    for (ShiftId s = 0; s < sc.shift_count(); ++s)
        for (SkillId k = 0; k < sc.skill_count(); ++k) {
            int able = 0;
            for (NurseId n = 0; n < sc.nurse_count(); ++n) able += can_work(sc, history, n, s, k, 0) ? 1 : 0;
            if (cov.at(s, k, 0).minimum > able)
                return fail('c', cell_name(sc, s, k, 0) + " needs " + std::to_string(cov.at(s, k, 0).minimum) +
                                     " nurses but only " + std::to_string(able) +
                                     " may work it after last week's shifts");
        }

    // One slot per required unit, matched to distinct nurses.
    for (int d = 0; d < kDaysPerWeek; ++d) {
        std::vector<std::pair<ShiftId, SkillId>> slots;
        for (ShiftId s = 0; s < sc.shift_count(); ++s)
            for (SkillId k = 0; k < sc.skill_count(); ++k)
                for (int u = 0; u < cov.at(s, k, d).minimum; ++u) slots.push_back({s, k});
        std::vector<int> owner(idx(sc.nurse_count()), -1);
        std::vector<char> seen;
        std::function<bool(int)> augment = [&](int slot) {
            for (NurseId n = 0; n < sc.nurse_count(); ++n) {
                if (seen[idx(n)] || !can_work(sc, history, n, slots[idx(slot)].first, slots[idx(slot)].second, d)) continue;
                seen[idx(n)] = 1;
                if (owner[idx(n)] < 0 || augment(owner[idx(n)])) {
                    owner[idx(n)] = slot;
                    return true;
                }
            }
            return false;
        };
        for (int i = 0; i < static_cast<int>(slots.size()); ++i) {
            seen.assign(idx(sc.nurse_count()), 0);
            if (!augment(i))
                return fail('d', "the minimum requirements on " + std::string(day_name(d)) +
                                     " cannot be split among distinct qualified nurses");
        }
    }
    return {};
}

}  // namespace inrc2
