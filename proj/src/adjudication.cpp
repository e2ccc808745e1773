#include "inrc2/adjudication.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace inrc2 {

namespace {

std::size_t idx(int i) { return static_cast<std::size_t>(i); }

void check_shape(const ScoreMatrix& s) {
    if (s.values.empty() || s.values[0].empty())
        throw AdjudicationError(AdjudicationError::Kind::ShapeMismatch, "score table is empty");
    for (const auto& row : s.values)
        if (row.size() != s.values[0].size())
            throw AdjudicationError(AdjudicationError::Kind::ShapeMismatch, "rows have different lengths");
}

std::vector<int> order_by_mean(const std::vector<Rational>& means) {
    std::vector<int> order(means.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return means[idx(a)] < means[idx(b)]; });
    return order;
}

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    return s.substr(b, s.find_last_not_of(" \t\r") - b + 1);
}

}  // namespace

std::int64_t penalty_value(const ScoreMatrix& scores, int instance) {
    std::optional<std::int64_t> worst;
    for (const auto& row : scores.values)
        if (const Score& v = row[idx(instance)]; v && (!worst || *v > *worst)) worst = v;
    return worst ? *worst + 1 : 0;
}

RankMatrix compute_ranks(const ScoreMatrix& scores) {
    check_shape(scores);
    const int k = scores.participant_count();
    RankMatrix ranks(idx(k), std::vector<Rational>(idx(scores.instance_count())));
    for (int j = 0; j < scores.instance_count(); ++j) {
        const std::int64_t m = penalty_value(scores, j);
        std::vector<std::int64_t> col;
        for (const auto& row : scores.values) col.push_back(row[idx(j)].value_or(m));
        std::vector<int> order(idx(k));
        std::iota(order.begin(), order.end(), 0);
        std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return col[idx(a)] < col[idx(b)]; });
        // positions p..q (1-based) sharing a value all get (p + q) / 2
        for (int p = 0; p < k;) {
            int q = p;
            while (q + 1 < k && col[idx(order[idx(q + 1)])] == col[idx(order[idx(p)])]) ++q;
            for (int i = p; i <= q; ++i) ranks[idx(order[idx(i)])][idx(j)] = Rational(p + 1 + q + 1, 2);
            p = q + 1;
        }
    }
    return ranks;
}

std::vector<Rational> mean_ranks(const RankMatrix& ranks) {
    std::vector<Rational> means;
    for (const auto& row : ranks) {
        Rational sum(0);
        for (const auto& r : row) sum += r;
        means.push_back(sum / Rational(static_cast<std::int64_t>(row.size())));
    }
    return means;
}

std::vector<int> select_finalists(const std::vector<Rational>& means, int quota) {
    const std::vector<int> order = order_by_mean(means);
    if (quota >= static_cast<int>(order.size())) return order;
    std::vector<int> chosen(order.begin(), order.begin() + std::max(quota, 0));
    if (chosen.empty()) return chosen;
    const Rational cut = means[idx(chosen.back())];
    for (std::size_t i = chosen.size(); i < order.size() && means[idx(order[i])] == cut; ++i) chosen.push_back(order[i]);
    return chosen;
}

FinalRanking final_ranking(const std::vector<ScoreMatrix>& trials) {
    if (trials.empty()) throw AdjudicationError(AdjudicationError::Kind::ShapeMismatch, "no trials");
    for (const auto& t : trials) {
        check_shape(t);
        if (t.participant_count() != trials[0].participant_count() || t.instance_count() != trials[0].instance_count())
            throw AdjudicationError(AdjudicationError::Kind::ShapeMismatch, "trials have different shapes");
    }
    const int k = trials[0].participant_count();
    std::vector<Rational> sums(idx(k), Rational(0));
    for (const auto& t : trials) {
        const RankMatrix r = compute_ranks(t);
        for (int i = 0; i < k; ++i)
            for (const auto& v : r[idx(i)]) sums[idx(i)] += v;
    }
    const Rational cells(static_cast<std::int64_t>(trials.size()) * trials[0].instance_count());
    FinalRanking out;
    for (const auto& s : sums) out.means.push_back(s / cells);
    out.order = order_by_mean(out.means);
    for (int i : out.order)
        if (out.means[idx(i)] == out.means[idx(out.order[0])]) out.leaders.push_back(i);
    return out;
}

ScoreMatrix parse_score_table(const std::string& text) {
    ScoreMatrix m;
    std::istringstream in(text);
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        line = trim(line);
        if (line.empty() || line[0] == '#') continue;
        std::vector<std::string> cells;
        std::stringstream ss(line);
        std::string cell;
        while (std::getline(ss, cell, ',')) cells.push_back(trim(cell));
        if (line.back() == ',') cells.push_back("");
        if (cells.size() < 2)
            throw AdjudicationError(AdjudicationError::Kind::BadTable,
                                    "line " + std::to_string(line_no) + ": expected a name and at least one score");
        m.participants.push_back(cells[0]);
        std::vector<Score> row;
        for (std::size_t i = 1; i < cells.size(); ++i) {
            if (cells[i].empty()) {
                row.push_back(std::nullopt);
                continue;
            }
            std::size_t used = 0;
            std::int64_t v = 0;
            try {
                v = std::stoll(cells[i], &used);
            } catch (const std::exception&) {
                used = 0;
            }
            if (used != cells[i].size())
                throw AdjudicationError(AdjudicationError::Kind::BadTable,
                                        "line " + std::to_string(line_no) + ": not an integer: " + cells[i]);
            row.push_back(v);
        }
        m.values.push_back(std::move(row));
    }
    check_shape(m);
    return m;
}

}  // namespace inrc2
