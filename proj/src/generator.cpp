#include "inrc2/generator.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <numeric>
#include <random>

#include "inrc2/textio.hpp"

namespace inrc2 {

namespace {

std::size_t idx(int i) { return static_cast<std::size_t>(i); }

using Rng = std::mt19937_64;

int uniform(Rng& rng, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }
bool chance(Rng& rng, double p) { return std::uniform_real_distribution<double>(0.0, 1.0)(rng) < p; }

const std::vector<std::vector<std::string>> kShiftSets = {
    {"Day"}, {"Early", "Late"}, {"Early", "Late", "Night"}, {"Early", "Day", "Late", "Night"}};
const std::vector<std::string> kSkills = {"HeadNurse", "Nurse", "Caretaker", "Trainee"};
const std::vector<std::string> kPrefixes = {"HN", "NU", "CT", "TR"};

int scaled(double per_week, int weeks) { return static_cast<int>(std::lround(per_week * weeks)); }

Scenario make_scenario(const GeneratorConfig& cfg, Rng& rng) {
    RawScenario raw;
    raw.id = dataset_name(cfg.nurses, cfg.weeks);
    raw.num_weeks = cfg.weeks;
    raw.skills.assign(kSkills.begin(), kSkills.begin() + cfg.skill_count);

    const auto& shifts = kShiftSets[idx(cfg.shift_count - 1)];
    for (const auto& name : shifts) {
        const int lo = uniform(rng, 2, 3);
        raw.shift_types.push_back({name, lo, lo + uniform(rng, 2, 3)});
    }
    // Later shifts may not be followed by earlier ones the next day.
    for (std::size_t i = 0; i < shifts.size(); ++i)
        raw.successions.push_back({shifts[i], std::vector<std::string>(shifts.begin(), shifts.begin() + static_cast<long>(i))});

    const int w = cfg.weeks;
    raw.contracts = {
        {"FullTime", {scaled(3.75, w), scaled(5.5, w)}, {3, 5}, {2, 3}, w / 2, chance(rng, 0.7)},
        {"PartTime", {scaled(1.75, w), scaled(2.75, w)}, {3, 5}, {3, 5}, w / 2, chance(rng, 0.7)},
        {"HalfTime", {scaled(2.5, w), scaled(4.0, w)}, {3, 5}, {2, 4}, w / 2 + 1, chance(rng, 0.3)},
    };

    std::vector<int> per_skill(idx(cfg.skill_count), 0);
    for (int n = 0; n < cfg.nurses; ++n) {
        // The first nurses cover every skill once, the rest are random.
        const int primary = n < cfg.skill_count ? n : uniform(rng, 0, cfg.skill_count - 1);
        RawScenario::RawNurse nurse;
        nurse.name = kPrefixes[idx(primary)] + "_" + std::to_string(per_skill[idx(primary)]++);
        nurse.contract = raw.contracts[idx(uniform(rng, 0, 2))].name;
        nurse.skills.push_back(kSkills[idx(primary)]);
        if (primary + 1 < cfg.skill_count && (primary == 0 || chance(rng, 0.3)))
            nurse.skills.push_back(kSkills[idx(primary + 1)]);
        raw.nurses.push_back(nurse);
    }
    return resolve_scenario(raw);
}

// Demand comes from a random legal roster, so every minimum is coverable
// at least when the week is solved on its own.
WeekData make_week(const GeneratorConfig& cfg, const Scenario& sc, Rng& rng) {
    const int shifts = sc.shift_count();
    const int skills = sc.skill_count();
    std::vector<Coverage> cells(idx(shifts * skills * kDaysPerWeek));
    auto at = [&](ShiftId s, SkillId k, int d) -> Coverage& { return cells[idx((s * skills + k) * kDaysPerWeek + d)]; };

    std::vector<ShiftId> prev(idx(sc.nurse_count()), kNoShift);
    for (int d = 0; d < kDaysPerWeek; ++d) {
        const double share = d == 0 ? 0.35 : 0.5;
        const int busy = std::max(1, static_cast<int>(std::floor(share * sc.nurse_count())));
        std::vector<NurseId> order(idx(sc.nurse_count()));
        std::iota(order.begin(), order.end(), 0);
        std::shuffle(order.begin(), order.end(), rng);
        std::vector<ShiftId> today(idx(sc.nurse_count()), kNoShift);
        int placed = 0;
        for (NurseId n : order) {
            if (placed == busy) break;
            std::vector<ShiftId> legal;
            for (ShiftId s = 0; s < shifts; ++s)
                if (!sc.successions.forbids(prev[idx(n)], s)) legal.push_back(s);
            if (legal.empty()) continue;
            const ShiftId s = legal[idx(uniform(rng, 0, static_cast<int>(legal.size()) - 1))];
            const auto& own = sc.nurses[idx(n)].skills;
            const SkillId k = own[idx(uniform(rng, 0, static_cast<int>(own.size()) - 1))];
            ++at(s, k, d).minimum;
            today[idx(n)] = s;
            ++placed;
        }
        prev = today;

        const int ceiling = static_cast<int>(std::floor(0.8 * sc.nurse_count()));
        for (ShiftId s = 0; s < shifts; ++s)
            for (SkillId k = 0; k < skills; ++k) at(s, k, d).optimal = at(s, k, d).minimum;
        for (int extra = uniform(rng, 0, std::max(0, ceiling - placed)); extra > 0; --extra)
            ++at(uniform(rng, 0, shifts - 1), uniform(rng, 0, skills - 1), d).optimal;
    }

    WeekData w;
    w.scenario_id = sc.id;
    for (ShiftId s = 0; s < shifts; ++s)
        for (SkillId k = 0; k < skills; ++k) {
            Requirement r{s, k, {}};
            for (int d = 0; d < kDaysPerWeek; ++d) r.per_day[idx(d)] = at(s, k, d);
            w.requirements.push_back(r);
        }
    for (NurseId n = 0; n < sc.nurse_count(); ++n)
        for (int d = 0; d < kDaysPerWeek; ++d)
            if (chance(rng, cfg.request_density))
                w.requests.push_back({n, chance(rng, 0.4) ? kAnyShift : uniform(rng, 0, shifts - 1), d});
    return w;
}

History make_history(const Scenario& sc, Rng& rng, bool blank) {
    History h;
    h.scenario_id = sc.id;
    for (NurseId n = 0; n < sc.nurse_count(); ++n) {
        NurseHistory e;
        e.nurse = n;
        if (blank || chance(rng, 0.35)) {
            e.consec_off = blank ? 1 : uniform(rng, 1, 4);
        } else {
            e.last_shift = uniform(rng, 0, sc.shift_count() - 1);
            e.consec_same_shift = uniform(rng, 1, 3);
            e.consec_work = e.consec_same_shift + uniform(rng, 0, 2);
        }
        h.entries.push_back(e);
    }
    return h;
}

}  // namespace

std::string GeneratorConfig::problem() const {
    if (nurses < 1) return "nurses must be positive";
    if (weeks < 1) return "weeks must be positive";
    if (skill_count < 1 || skill_count > 4) return "skill count must be between 1 and 4";
    if (shift_count < 1 || shift_count > 4) return "shift count must be between 1 and 4";
    if (skill_count > nurses) return "need at least one nurse per skill";
    if (!(request_density >= 0.0 && request_density <= 1.0)) return "request density must be within [0, 1]";
    return "";
}

std::string dataset_name(int nurses, int weeks) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "n%03dw%d", nurses, weeks);
    return buf;
}

Dataset generate_instance(const GeneratorConfig& cfg) {
    if (const std::string why = cfg.problem(); !why.empty()) throw std::invalid_argument(why);
    Rng rng(cfg.seed);
    Dataset d;
    d.scenario = make_scenario(cfg, rng);
    for (int i = 0; i < 3; ++i) d.histories.push_back(make_history(d.scenario, rng, i == 0));
    for (int i = 0; i < 10; ++i) d.weeks.push_back(make_week(cfg, d.scenario, rng));
    return d;
}

std::vector<std::string> write_dataset(const Dataset& d, const std::string& dir) {
    namespace fs = std::filesystem;
    fs::create_directories(dir);
    const std::string name = dataset_name(d.scenario.nurse_count(), d.scenario.num_weeks);
    std::vector<std::string> paths;
    auto put = [&](const std::string& file, const std::string& text) {
        const std::string p = (fs::path(dir) / file).string();
        write_file(p, text);
        paths.push_back(p);
    };
    put("Sc-" + name + ".txt", write_scenario(d.scenario));
    for (std::size_t i = 0; i < d.histories.size(); ++i)
        put("H0-" + name + "-" + std::to_string(i) + ".txt", write_history(d.histories[i], d.scenario));
    for (std::size_t i = 0; i < d.weeks.size(); ++i)
        put("WD-" + name + "-" + std::to_string(i) + ".txt", write_week_data(d.weeks[i], d.scenario));
    return paths;
}

}  // namespace inrc2
