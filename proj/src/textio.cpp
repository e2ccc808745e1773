#include "inrc2/textio.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <set>
#include <sstream>
#include <tuple>

namespace inrc2 {

namespace {

struct Line {
    int number = 0;
    std::string_view raw;
    std::vector<std::string> tokens;
};

bool is_blank(char c) { return c == ' ' || c == '\t' || c == '\v' || c == '\f'; }

// Whitespace separates tokens, except inside parentheses where it is dropped,
// so "( 1 , 2 )" reads as the single token "(1,2)".
std::vector<std::string> tokenize(std::string_view raw) {
    std::vector<std::string> tokens;
    std::string current;
    int depth = 0;
    for (char c : raw) {
        if (c == '(') ++depth;
        if (c == ')' && depth > 0) --depth;
        if (is_blank(c)) {
            if (depth > 0) continue;
            if (!current.empty()) tokens.push_back(std::move(current));
            current.clear();
            continue;
        }
        current += c;
    }
    if (!current.empty()) tokens.push_back(std::move(current));
    return tokens;
}

std::vector<Line> split_lines(std::string_view text) {
    std::vector<Line> lines;
    int number = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        std::size_t end = text.find_first_of("\r\n", pos);
        if (end == std::string_view::npos) end = text.size();
        ++number;
        std::string_view raw = text.substr(pos, end - pos);
        auto tokens = tokenize(raw);
        if (!tokens.empty()) lines.push_back({number, raw, std::move(tokens)});
        if (end == text.size()) break;
        // "\r\n" counts as one line break
        pos = end + 1;
        if (text[end] == '\r' && pos < text.size() && text[pos] == '\n') ++pos;
    }
    return lines;
}

const std::set<std::string_view> kSectionKeywords = {
    "SCENARIO", "WEEKS", "SKILLS", "SHIFT_TYPES", "FORBIDDEN_SHIFT_TYPES_SUCCESSIONS", "CONTRACTS",
    "NURSES", "WEEK_DATA", "REQUIREMENTS", "SHIFT_OFF_REQUESTS", "HISTORY", "NURSE_HISTORY",
    "SOLUTION", "ASSIGNMENTS"};

std::string_view trim(std::string_view s) {
    while (!s.empty() && (is_blank(s.front()) || s.front() == '\r')) s.remove_prefix(1);
    while (!s.empty() && (is_blank(s.back()) || s.back() == '\r')) s.remove_suffix(1);
    return s;
}

class Cursor {
public:
    Cursor(FileKind kind, std::string_view text) : kind_(kind), lines_(split_lines(text)) {}

    bool done() const { return pos_ >= lines_.size(); }
    const Line& peek() const {
        if (done()) fail_eof();
        return lines_[pos_];
    }
    const Line& next() {
        const Line& l = peek();
        ++pos_;
        return l;
    }

    [[noreturn]] void fail(const Line& line, const std::string& message) const {
        throw FormatError(kind_, line.number, message);
    }
    [[noreturn]] void fail_eof() const {
        const int last = lines_.empty() ? 0 : lines_.back().number;
        throw FormatError(kind_, last + 1, "unexpected end of file");
    }

    // A line consisting of a single keyword, e.g. "REQUIREMENTS".
    void expect_keyword(std::string_view keyword) {
        if (done()) fail_eof();
        const Line& l = next();
        if (l.tokens.size() != 1 || l.tokens[0] != keyword)
            fail(l, "expected '" + std::string(keyword) + "'" + overflow_hint(l));
    }

    static bool is_header(const Line& l, std::string_view key) {
        const auto eq = l.raw.find('=');
        return eq != std::string_view::npos && trim(l.raw.substr(0, eq)) == key;
    }

    // "KEY = value" with arbitrary spacing around '='.
    std::string header_value(std::string_view key) {
        if (done()) fail_eof();
        const Line& l = next();
        if (!is_header(l, key)) fail(l, "expected '" + std::string(key) + " = ...'" + overflow_hint(l));
        const std::string_view value = trim(l.raw.substr(l.raw.find('=') + 1));
        if (value.empty() || std::any_of(value.begin(), value.end(), is_blank))
            fail(l, "header '" + std::string(key) + "' needs exactly one value");
        return std::string(value);
    }

    int header_count(std::string_view key) {
        const std::string value = header_value(key);
        return parse_count(lines_[pos_ - 1], value);
    }

    int parse_int(const Line& l, std::string_view token) const {
        int v = 0;
        const char* first = token.data();
        const char* last = token.data() + token.size();
        auto [ptr, ec] = std::from_chars(first, last, v);
        if (token.empty() || ec != std::errc{} || ptr != last) fail(l, "expected an integer, got '" + std::string(token) + "'");
        return v;
    }
    int parse_count(const Line& l, std::string_view token) const {
        const int v = parse_int(l, token);
        if (v < 0) fail(l, "count must be non-negative");
        return v;
    }
    // "(a,b)"
    std::pair<int, int> parse_pair(const Line& l, std::string_view token) const {
        if (token.size() < 5 || token.front() != '(' || token.back() != ')')
            fail(l, "expected '(a,b)', got '" + std::string(token) + "'");
        const std::string_view inner = token.substr(1, token.size() - 2);
        const auto comma = inner.find(',');
        if (comma == std::string_view::npos || inner.find(',', comma + 1) != std::string_view::npos)
            fail(l, "expected '(a,b)', got '" + std::string(token) + "'");
        return {parse_int(l, inner.substr(0, comma)), parse_int(l, inner.substr(comma + 1))};
    }

    void expect_end() {
        if (!done()) fail(peek(), "unexpected content after the last section" + overflow_hint(peek()));
    }

    // Reads the record lines of a counted section, rejecting keyword lines.
    const Line& record(std::string_view section, int index, int count) {
        if (done()) fail_eof();
        const Line& l = next();
        if (kSectionKeywords.count(l.tokens[0]) != 0 || Cursor::looks_like_header(l))
            fail(l, std::string(section) + ": found " + std::to_string(index) + " of " + std::to_string(count) +
                        " declared entries");
        return l;
    }

    static bool looks_like_header(const Line& l) { return l.raw.find('=') != std::string_view::npos; }

private:
    static std::string overflow_hint(const Line& l) {
        if (kSectionKeywords.count(l.tokens[0]) != 0 || looks_like_header(l)) return {};
        return " (more entries than the declared count?)";
    }

    FileKind kind_;
    std::vector<Line> lines_;
    std::size_t pos_ = 0;
};

std::string at_line(const Line& l) { return "line " + std::to_string(l.number); }

// Reference lookups raise ModelError::UnknownReference with the line number.
template <typename Find>
int resolve(const Line& l, std::string_view kind, std::string_view name, Find&& find) {
    auto id = find(name);
    if (!id)
        throw ModelError(ModelError::Kind::UnknownReference,
                         at_line(l) + ": unknown " + std::string(kind) + " '" + std::string(name) + "'");
    return *id;
}

// "W scenario_id" line shared by history and solution files.
std::pair<int, std::string> parse_week_line(Cursor& cur, const Scenario& sc) {
    const Line& l = cur.next();
    if (l.tokens.size() != 2) cur.fail(l, "expected '<week> <scenario>'");
    const int week = cur.parse_int(l, l.tokens[0]);
    if (week < 0) cur.fail(l, "week index must be non-negative");
    if (week > sc.num_weeks) cur.fail(l, "week index exceeds the planning horizon");
    return {week, l.tokens[1]};
}

std::string pair_token(int a, int b) { return "(" + std::to_string(a) + "," + std::to_string(b) + ")"; }

}  // namespace

std::string_view file_kind_name(FileKind kind) {
    switch (kind) {
        case FileKind::Scenario: return "scenario";
        case FileKind::Week: return "week";
        case FileKind::History: return "history";
        case FileKind::Solution: return "solution";
    }
    return "unknown";
}

FormatError::FormatError(FileKind kind, int line, const std::string& message)
    : std::runtime_error(std::string(file_kind_name(kind)) + " file, line " + std::to_string(line) + ": " + message),
      kind_(kind),
      line_(line),
      message_(message) {}

Scenario parse_scenario(std::string_view text) {
    Cursor cur(FileKind::Scenario, text);
    RawScenario raw;
    raw.id = cur.header_value("SCENARIO");
    raw.num_weeks = cur.header_count("WEEKS");

    const int skill_count = cur.header_count("SKILLS");
    for (int i = 0; i < skill_count; ++i) {
        const Line& l = cur.record("SKILLS", i, skill_count);
        if (l.tokens.size() != 1) cur.fail(l, "expected a single skill name");
        raw.skills.push_back(l.tokens[0]);
    }

    const int shift_count = cur.header_count("SHIFT_TYPES");
    for (int i = 0; i < shift_count; ++i) {
        const Line& l = cur.record("SHIFT_TYPES", i, shift_count);
        if (l.tokens.size() != 2) cur.fail(l, "expected '<shift> (min,max)'");
        auto [lo, hi] = cur.parse_pair(l, l.tokens[1]);
        raw.shift_types.push_back({l.tokens[0], lo, hi});
    }

    cur.expect_keyword("FORBIDDEN_SHIFT_TYPES_SUCCESSIONS");
    while (!cur.done() && !Cursor::is_header(cur.peek(), "CONTRACTS")) {
        const Line& l = cur.next();
        if (l.tokens.size() < 2) cur.fail(l, "expected '<shift> <count> <successors...>'");
        const int k = cur.parse_count(l, l.tokens[1]);
        if (static_cast<std::size_t>(k) + 2 != l.tokens.size())
            cur.fail(l, "succession count " + std::to_string(k) + " does not match the listed shift types");
        raw.successions.push_back({l.tokens[0], {l.tokens.begin() + 2, l.tokens.end()}});
    }

    const int contract_count = cur.header_count("CONTRACTS");
    for (int i = 0; i < contract_count; ++i) {
        const Line& l = cur.record("CONTRACTS", i, contract_count);
        if (l.tokens.size() != 6) cur.fail(l, "expected '<name> (a,b) (c,d) (e,f) <weekends> <complete>'");
        RawScenario::RawContract c;
        c.name = l.tokens[0];
        auto [ta, tb] = cur.parse_pair(l, l.tokens[1]);
        auto [wa, wb] = cur.parse_pair(l, l.tokens[2]);
        auto [oa, ob] = cur.parse_pair(l, l.tokens[3]);
        c.total_assignments = {ta, tb};
        c.consecutive_work = {wa, wb};
        c.consecutive_off = {oa, ob};
        c.max_working_weekends = cur.parse_count(l, l.tokens[4]);
        const int complete = cur.parse_int(l, l.tokens[5]);
        if (complete != 0 && complete != 1) cur.fail(l, "complete-weekend flag must be 0 or 1");
        c.complete_weekend = complete == 1;
        raw.contracts.push_back(std::move(c));
    }

    const int nurse_count = cur.header_count("NURSES");
    for (int i = 0; i < nurse_count; ++i) {
        const Line& l = cur.record("NURSES", i, nurse_count);
        if (l.tokens.size() < 3) cur.fail(l, "expected '<nurse> <contract> <count> <skills...>'");
        const int k = cur.parse_count(l, l.tokens[2]);
        if (static_cast<std::size_t>(k) + 3 != l.tokens.size())
            cur.fail(l, "skill count " + std::to_string(k) + " does not match the listed skills");
        raw.nurses.push_back({l.tokens[0], l.tokens[1], {l.tokens.begin() + 3, l.tokens.end()}});
    }
    cur.expect_end();
    return resolve_scenario(raw);
}

WeekData parse_week_data(std::string_view text, const Scenario& sc) {
    Cursor cur(FileKind::Week, text);
    WeekData week;
    cur.expect_keyword("WEEK_DATA");
    {
        const Line& l = cur.next();
        if (l.tokens.size() != 1) cur.fail(l, "expected the scenario identifier");
        week.scenario_id = l.tokens[0];
    }
    cur.expect_keyword("REQUIREMENTS");
    std::set<std::pair<ShiftId, SkillId>> seen;
    while (!cur.done() && !Cursor::is_header(cur.peek(), "SHIFT_OFF_REQUESTS")) {
        const Line& l = cur.next();
        if (l.tokens.size() != 2 + kDaysPerWeek) cur.fail(l, "expected '<shift> <skill>' and 7 '(min,opt)' pairs");
        Requirement req;
        req.shift = resolve(l, "shift type", l.tokens[0], [&](auto n) { return sc.find_shift(n); });
        req.skill = resolve(l, "skill", l.tokens[1], [&](auto n) { return sc.find_skill(n); });
        if (!seen.emplace(req.shift, req.skill).second)
            throw ModelError(ModelError::Kind::DuplicateName,
                             at_line(l) + ": duplicate requirement for " + l.tokens[0] + " " + l.tokens[1]);
        for (int d = 0; d < kDaysPerWeek; ++d) {
            auto [lo, opt] = cur.parse_pair(l, l.tokens[static_cast<std::size_t>(2 + d)]);
            if (lo < 0 || opt < lo) cur.fail(l, "coverage needs 0 <= minimum <= optimal");
            req.per_day[static_cast<std::size_t>(d)] = {lo, opt};
        }
        week.requirements.push_back(req);
    }

    const int request_count = cur.header_count("SHIFT_OFF_REQUESTS");
    for (int i = 0; i < request_count; ++i) {
        const Line& l = cur.record("SHIFT_OFF_REQUESTS", i, request_count);
        if (l.tokens.size() != 3) cur.fail(l, "expected '<nurse> <shift> <day>'");
        ShiftOffRequest r;
        r.nurse = resolve(l, "nurse", l.tokens[0], [&](auto n) { return sc.find_nurse(n); });
        r.shift = l.tokens[1] == kAnyToken
                      ? kAnyShift
                      : resolve(l, "shift type", l.tokens[1], [&](auto n) { return sc.find_shift(n); });
        auto day = parse_day(l.tokens[2]);
        if (!day) cur.fail(l, "unknown day '" + l.tokens[2] + "'");
        r.day = *day;
        if (std::find(week.requests.begin(), week.requests.end(), r) == week.requests.end())
            week.requests.push_back(r);
    }
    cur.expect_end();
    return week;
}

History parse_history(std::string_view text, const Scenario& sc) {
    Cursor cur(FileKind::History, text);
    History h;
    cur.expect_keyword("HISTORY");
    std::tie(h.week_index, h.scenario_id) = parse_week_line(cur, sc);
    cur.expect_keyword("NURSE_HISTORY");

    std::vector<bool> present(static_cast<std::size_t>(sc.nurse_count()), false);
    h.entries.resize(static_cast<std::size_t>(sc.nurse_count()));
    while (!cur.done()) {
        const Line& l = cur.next();
        if (l.tokens.size() != 7)
            cur.fail(l, "expected '<nurse> <total> <weekends> <last shift> <same shift> <work> <off>'");
        NurseHistory e;
        e.nurse = resolve(l, "nurse", l.tokens[0], [&](auto n) { return sc.find_nurse(n); });
        if (present[static_cast<std::size_t>(e.nurse)])
            throw ModelError(ModelError::Kind::DuplicateName, at_line(l) + ": second history line for " + l.tokens[0]);
        present[static_cast<std::size_t>(e.nurse)] = true;
        e.total_assignments = cur.parse_int(l, l.tokens[1]);
        e.total_weekends = cur.parse_int(l, l.tokens[2]);
        e.last_shift = l.tokens[3] == kNoneToken
                           ? kNoShift
                           : resolve(l, "shift type", l.tokens[3], [&](auto n) { return sc.find_shift(n); });
        e.consec_same_shift = cur.parse_int(l, l.tokens[4]);
        e.consec_work = cur.parse_int(l, l.tokens[5]);
        e.consec_off = cur.parse_int(l, l.tokens[6]);
        if (auto why = e.invariant_violation()) cur.fail(l, "nurse " + l.tokens[0] + ": " + *why);
        h.entries[static_cast<std::size_t>(e.nurse)] = e;
    }
    for (NurseId n = 0; n < sc.nurse_count(); ++n)
        if (!present[static_cast<std::size_t>(n)])
            throw ModelError(ModelError::Kind::MissingNurse, "history has no line for nurse " + sc.nurses[static_cast<std::size_t>(n)].name);
    return h;
}

Solution parse_solution(std::string_view text, const Scenario& sc) {
    Cursor cur(FileKind::Solution, text);
    Solution s;
    cur.expect_keyword("SOLUTION");
    std::tie(s.week_index, s.scenario_id) = parse_week_line(cur, sc);
    const int count = cur.header_count("ASSIGNMENTS");
    for (int i = 0; i < count; ++i) {
        const Line& l = cur.record("ASSIGNMENTS", i, count);
        if (l.tokens.size() != 4) cur.fail(l, "expected '<nurse> <day> <shift> <skill>'");
        Assignment a;
        a.nurse = resolve(l, "nurse", l.tokens[0], [&](auto n) { return sc.find_nurse(n); });
        auto day = parse_day(l.tokens[1]);
        if (!day) cur.fail(l, "unknown day '" + l.tokens[1] + "'");
        a.day = *day;
        a.shift = resolve(l, "shift type", l.tokens[2], [&](auto n) { return sc.find_shift(n); });
        a.skill = resolve(l, "skill", l.tokens[3], [&](auto n) { return sc.find_skill(n); });
        s.assignments.push_back(a);
    }
    cur.expect_end();
    return s;
}

std::string write_scenario(const Scenario& sc) {
    std::ostringstream out;
    out << "SCENARIO = " << sc.id << "\n\n";
    out << "WEEKS = " << sc.num_weeks << "\n\n";
    out << "SKILLS = " << sc.skills.size() << "\n";
    for (const auto& s : sc.skills) out << s << "\n";
    out << "\nSHIFT_TYPES = " << sc.shift_types.size() << "\n";
    for (const auto& st : sc.shift_types) out << st.name << " " << pair_token(st.consecutive.min, st.consecutive.max) << "\n";
    out << "\nFORBIDDEN_SHIFT_TYPES_SUCCESSIONS\n";
    for (ShiftId s = 0; s < sc.shift_count(); ++s) {
        const auto next = sc.successions.forbidden_after(s);
        out << sc.shift_types[static_cast<std::size_t>(s)].name << " " << next.size();
        for (ShiftId n : next) out << " " << sc.shift_types[static_cast<std::size_t>(n)].name;
        out << "\n";
    }
    out << "\nCONTRACTS = " << sc.contracts.size() << "\n";
    for (const auto& c : sc.contracts) {
        out << c.name << " " << pair_token(c.total_assignments.min, c.total_assignments.max) << " "
            << pair_token(c.consecutive_work.min, c.consecutive_work.max) << " "
            << pair_token(c.consecutive_off.min, c.consecutive_off.max) << " " << c.max_working_weekends << " "
            << (c.complete_weekend ? 1 : 0) << "\n";
    }
    out << "\nNURSES = " << sc.nurses.size() << "\n";
    for (const auto& n : sc.nurses) {
        out << n.name << " " << sc.contracts[static_cast<std::size_t>(n.contract)].name << " " << n.skills.size();
        for (SkillId s : n.skills) out << " " << sc.skills[static_cast<std::size_t>(s)];
        out << "\n";
    }
    return out.str();
}

std::string write_week_data(const WeekData& week, const Scenario& sc) {
    std::ostringstream out;
    out << "WEEK_DATA\n" << week.scenario_id << "\n\nREQUIREMENTS\n";
    for (const auto& r : week.requirements) {
        out << sc.shift_types[static_cast<std::size_t>(r.shift)].name << " " << sc.skills[static_cast<std::size_t>(r.skill)];
        for (const auto& c : r.per_day) out << " " << pair_token(c.minimum, c.optimal);
        out << "\n";
    }
    out << "\nSHIFT_OFF_REQUESTS = " << week.requests.size() << "\n";
    for (const auto& r : week.requests) {
        out << sc.nurses[static_cast<std::size_t>(r.nurse)].name << " "
            << (r.shift == kAnyShift ? std::string(kAnyToken) : sc.shift_types[static_cast<std::size_t>(r.shift)].name) << " "
            << day_name(r.day) << "\n";
    }
    return out.str();
}

std::string write_history(const History& h, const Scenario& sc) {
    std::ostringstream out;
    out << "HISTORY\n" << h.week_index << " " << h.scenario_id << "\n\nNURSE_HISTORY\n";
    for (const auto& e : h.entries) {
        out << sc.nurses[static_cast<std::size_t>(e.nurse)].name << " " << e.total_assignments << " " << e.total_weekends << " "
            << (e.last_shift == kNoShift ? std::string(kNoneToken) : sc.shift_types[static_cast<std::size_t>(e.last_shift)].name)
            << " " << e.consec_same_shift << " " << e.consec_work << " " << e.consec_off << "\n";
    }
    return out.str();
}

std::string write_solution(const Solution& s, const Scenario& sc) {
    std::ostringstream out;
    out << "SOLUTION\n" << s.week_index << " " << s.scenario_id << "\n\nASSIGNMENTS = " << s.assignments.size() << "\n";
    for (const auto& a : s.assignments) {
        out << sc.nurses[static_cast<std::size_t>(a.nurse)].name << " " << day_name(a.day) << " "
            << sc.shift_types[static_cast<std::size_t>(a.shift)].name << " " << sc.skills[static_cast<std::size_t>(a.skill)] << "\n";
    }
    return out.str();
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw FileError("cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::string& path, std::string_view content) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw FileError("cannot write '" + path + "'");
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!out) throw FileError("failed writing '" + path + "'");
}

}  // namespace inrc2
