#pragma once

// Evaluation harness for the 20-player clustering-game experiment: the
// recorded deltas and published ratings, the class-versus-quartile scoring
// of rankings, exhaustive grid tuning and a retention benchmark.

#include <array>
#include <chrono>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "cqr/engine.hpp"
#include "cqr/filters.hpp"
#include "cqr/player_class.hpp"
#include "cqr/random.hpp"

namespace cqr {

struct PlayerEvent {
    std::string player;
    Delta delta;
};

// ---------------------------------------------------------------------------
// Experiment data

struct ExperimentRow {
    const char* player;
    PlayerClass player_class;
    std::array<int, 20> deltas;
    std::array<int, 4> published_cqr;  // in experiment_parameterizations() order
};

// Mirrored in data/experiment_deltas.jsonl.
inline constexpr std::array<ExperimentRow, 20> experiment_rows{{
    {"F1", PlayerClass::F, {5, 10, 10, 20, 5, 40, 7, 2, 10, 12, 5, 15, 1, 42, 18, 26, 20, 35, 8, 9}, {300, 159, 178, 178}},
    {"F2", PlayerClass::F, {12, 16, 36, -41, -56, 15, 6, 8, 1, -19, -37, 33, 36, 42, -15, 51, -32, -34, 12, 4}, {38, 64, 93, 93}},
    {"F3", PlayerClass::F, {-1, -4, 6, 12, 19, 5, 10, -4, 3, -10, 40, 30, -14, -12, 32, 37, 11, -14, 2, -15}, {133, 27, 55, 55}},
    {"F4", PlayerClass::F, {10, 40, 25, 5, 35, 45, 45, 5, 1, 1, -2, 10, 15, 5, -1, 10, -5, -15, 30, 30}, {289, 69, 170, 170}},
    {"F5", PlayerClass::F, {-3, 12, -5, 6, -6, -15, 21, 7, 6, 9, -17, 13, -16, 5, -32, 20, 13, -5, 22, 24}, {59, 31, 27, 125}},
    {"f1", PlayerClass::f, {75, -12, -15, -32, -46, 5, 14, -22, -57, 24, 12, -3, 25, 12, 4, 1, 12, 14, 1, -3}, {9, 66, 20, 188}},
    {"f2", PlayerClass::f, {15, -18, 12, 14, 17, -12, -43, -24, -22, -37, -36, -32, 14, 25, 24, -12, 24, -3, 24, 24}, {-46, 120, 91, 91}},
    {"f3", PlayerClass::f, {-12, 24, 28, -14, -16, 25, -14, -32, 12, -22, -28, 14, 12, 17, -9, 3, 5, 12, 2, -2}, {5, 40, -15, 144}},
    {"f4", PlayerClass::f, {14, -42, 17, -11, -15, 2, 4, -18, -21, 20, 14, -12, -14, 23, -26, 29, 12, -14, -1, 32}, {-7, 41, 30, 30}},
    {"f5", PlayerClass::f, {-12, -41, -45, -22, -14, -17, -19, 4, 6, -12, -16, -14, 2, 18, 16, 19, 23, -3, 5, 12}, {-110, 92, 46, 88}},
    {"d1", PlayerClass::d, {14, 17, 37, 27, 54, 41, 12, -2, 16, 17, 12, -14, -17, -24, -52, 11, -32, 2, -14, -6}, {99, -132, -130, -130}},
    {"d2", PlayerClass::d, {32, 34, 12, 5, 9, 14, 27, 14, 25, 15, 14, 25, 12, 6, -14, -25, -5, 7, -14, -16}, {177, -49, -3, -69}},
    {"d3", PlayerClass::d, {-27, -29, -15, 25, 28, 12, 16, 27, 45, 32, 29, 31, 12, -14, -17, 16, -3, -8, -17, -19}, {124, -50, 21, 21}},
    {"d4", PlayerClass::d, {-42, 22, 24, 17, -29, 12, 5, 9, -7, -29, 14, -34, 3, 8, -12, -5, -15, 12, -16, 21}, {-42, -4, -59, -59}},
    {"d5", PlayerClass::d, {-14, 26, 17, 5, 26, 26, 39, 12, 17, -34, 16, 25, 2, 9, -16, 25, -32, -12, -15, -24}, {98, -63, -33, -147}},
    {"D1", PlayerClass::D, {-27, -12, 15, -4, -16, 2, -18, -31, -12, -14, -19, -5, 12, 5, -12, -15, -10, 9, -24, -1}, {-177, -36, -94, -137}},
    {"D2", PlayerClass::D, {4, -14, -16, 15, -13, -23, -17, -7, 4, 5, -17, -29, 12, -4, -14, -23, -11, 10, -12, -16}, {-166, -58, -83, -83}},
    {"D3", PlayerClass::D, {-17, -14, -12, -16, 5, 12, -16, -21, 3, 13, -22, 25, -6, -16, 26, -12, -37, -15, -18, -3}, {-141, -81, -69, -157}},
    {"D4", PlayerClass::D, {-5, -25, -21, 5, 16, -12, -15, -13, 24, -17, -14, 9, -24, -12, -16, 14, -13, 2, -21, -34}, {-172, -104, -120, -120}},
    {"D5", PlayerClass::D, {-36, 45, -23, -25, -14, -51, 21, 12, -14, -19, -24, -16, -4, -5, 2, 3, -15, 12, -14, -42}, {-207, -63, -132, -132}},
}};

/// (∞,0,∞), (8,0,8), (8,10,8), (8,10,4).
inline std::vector<CqrParams> experiment_parameterizations() {
    return {CqrParams::total(), CqrParams::make(8, 0.0, 8), CqrParams::make(8, 10.0, 8), CqrParams::make(8, 10.0, 4)};
}

/// Rankings as printed, best first, one per parameterization.
inline constexpr std::array<std::array<const char*, 20>, 4> printed_rankings{{
    {"F1", "F4", "d2", "F3", "d3", "d1", "d5", "F5", "F2", "f1", "f3", "f4", "f2", "d4", "f5", "D3", "D2", "D4", "D1", "D5"},
    {"F1", "f2", "f5", "F4", "f1", "F2", "f4", "f3", "F5", "F3", "d4", "D1", "d2", "d3", "D2", "D5", "d5", "D3", "D4", "d1"},
    {"F1", "F4", "F2", "f2", "F3", "f5", "f4", "F5", "d3", "f1", "d2", "f3", "d5", "d4", "D3", "D2", "D1", "D4", "d1", "D5"},
    {"f1", "F1", "F4", "f3", "F5", "F2", "f2", "f5", "F3", "f4", "d3", "d4", "d2", "D2", "D4", "d1", "D5", "D1", "d5", "D3"},
}};

/// Interquartile scores as printed.
inline constexpr std::array<long, 4> published_scores{34, 100, 92, 104};

/// Scores obtained by applying the default class-value matrix to the
/// rankings. The printed value for (∞,0,∞) is 34; the rankings give 24.
inline constexpr std::array<long, 4> expected_scores{24, 100, 92, 104};

/// The printed (∞,0,∞) ranking lists f2 (-46) at 13 above d4 (-42) at 14,
/// against its own values. Returns the printed ranking with that pair in
/// value order.
inline std::array<const char*, 20> corrected_printed_ranking(std::size_t param_index) {
    auto r = printed_rankings.at(param_index);
    if (param_index == 0) std::swap(r[12], r[13]);
    return r;
}

inline std::vector<PlayerEvent> experiment_events() {
    std::vector<PlayerEvent> out;
    out.reserve(400);
    for (const auto& row : experiment_rows)
        for (std::size_t i = 0; i < row.deltas.size(); ++i)
            out.push_back(PlayerEvent{row.player, Delta{static_cast<double>(row.deltas[i]), i + 1}});
    return out;
}

inline std::map<std::string, PlayerClass, std::less<>> experiment_classes() {
    std::map<std::string, PlayerClass, std::less<>> out;
    for (const auto& row : experiment_rows) out.emplace(row.player, row.player_class);
    return out;
}

// ---------------------------------------------------------------------------
// Scoring

/// Value of a player of a given class landing in a given ranking quartile.
class ClassValueMatrix {
public:
    using Values = std::array<std::array<long, 4>, 4>;  // [class][quartile - 1]

    ClassValueMatrix() = default;
    explicit ClassValueMatrix(const Values& values) : values_(values) {}

    static ClassValueMatrix uniform(long v) {
        Values values;
        for (auto& row : values) row.fill(v);
        return ClassValueMatrix(values);
    }

    long at(PlayerClass c, std::size_t quartile) const {
        if (quartile < 1 || quartile > 4) throw InvalidArgument("quartile must be in 1..4");
        return values_[static_cast<std::size_t>(c)][quartile - 1];
    }

    const Values& values() const noexcept { return values_; }
    bool is_default() const noexcept { return values_ == ClassValueMatrix{}.values_; }

private:
    Values values_{{{6, 4, -10, -25}, {4, 6, -4, -10}, {-10, -4, 6, 4}, {-25, -10, 4, 6}}};
};

/// Quartile of 1-based rank r among n players: ceil(4r / n).
inline std::size_t quartile_of(std::size_t rank, std::size_t n) {
    if (n == 0 || rank < 1 || rank > n) throw InvalidArgument("rank out of range");
    return (4 * rank + n - 1) / n;
}

/// Sum over players of matrix[class][quartile of rank].
template <class ClassMap>
long interquartile_score(const std::vector<RankingEntry>& ranking, const ClassMap& classes,
                         const ClassValueMatrix& matrix = {}) {
    long score = 0;
    for (const auto& e : ranking) {
        const auto it = classes.find(e.player);
        if (it == classes.end()) throw InvalidArgument("player '" + e.player + "' has no class label");
        score += matrix.at(it->second, quartile_of(e.rank, ranking.size()));
    }
    return score;
}

// ---------------------------------------------------------------------------
// Replay of the experiment

struct ReplayReport {
    struct Cell {
        std::string player;
        std::size_t param = 0;
        double computed = 0.0;
        double published = 0.0;
        bool matches() const noexcept { return computed == published; }
    };

    std::vector<CqrParams> params;
    std::vector<Cell> cells;
    std::vector<std::vector<RankingEntry>> rankings;
    std::vector<bool> ranking_matches;  // against the corrected printed order
    std::vector<long> scores;
    bool scores_checked = true;  // false with a non-default matrix

    std::size_t cqr_matches() const {
        std::size_t n = 0;
        for (const auto& c : cells) n += c.matches();
        return n;
    }

    bool score_matches(std::size_t i) const { return !scores_checked || scores.at(i) == expected_scores.at(i); }

    bool passed() const {
        if (cqr_matches() != cells.size()) return false;
        for (std::size_t i = 0; i < params.size(); ++i)
            if (!ranking_matches[i] || !score_matches(i)) return false;
        return true;
    }
};

inline ReplayReport replay_experiment(const ClassValueMatrix& matrix = {}) {
    ReplayReport report;
    report.params = experiment_parameterizations();
    Engine engine(report.params);
    for (const auto& e : experiment_events()) engine.record(e.player, e.delta);

    for (const auto& row : experiment_rows)
        for (std::size_t i = 0; i < report.params.size(); ++i)
            report.cells.push_back(ReplayReport::Cell{row.player, i, engine.cqr(row.player, report.params[i].name()),
                                                      static_cast<double>(row.published_cqr[i])});

    const auto classes = experiment_classes();
    report.scores_checked = matrix.is_default();
    for (std::size_t i = 0; i < report.params.size(); ++i) {
        auto ranking = engine.ranking(report.params[i].name());
        const auto expected = corrected_printed_ranking(i);
        bool same = ranking.size() == expected.size();
        for (std::size_t r = 0; same && r < ranking.size(); ++r) same = ranking[r].player == expected[r];
        report.ranking_matches.push_back(same);
        report.scores.push_back(interquartile_score(ranking, classes, matrix));
        report.rankings.push_back(std::move(ranking));
    }
    return report;
}

// ---------------------------------------------------------------------------
// Grid tuning

struct TuneResult {
    CqrParams best = CqrParams::total();
    long best_score = 0;
    std::vector<long> scores;  // one per grid entry
};

/// Scores the final ranking of every grid entry and returns the maximizer;
/// the earliest grid entry wins ties.
template <class ClassMap>
TuneResult tune(const std::vector<CqrParams>& grid, std::span<const PlayerEvent> events, const ClassMap& classes,
                const ClassValueMatrix& matrix = {}) {
    if (grid.empty()) throw InvalidArgument("tuning grid is empty");
    TuneResult result;
    for (std::size_t i = 0; i < grid.size(); ++i) {
        Engine engine({grid[i]});
        for (const auto& e : events) engine.record(e.player, e.delta);
        const long score = interquartile_score(engine.ranking(grid[i].name()), classes, matrix);
        result.scores.push_back(score);
        if (i == 0 || score > result.best_score) {
            result.best = grid[i];
            result.best_score = score;
        }
    }
    return result;
}

// ---------------------------------------------------------------------------
// Retention benchmark

/// Retention ceiling per player per parameterization: 3T + 2 for a finite
/// window, a constant number of accumulators otherwise.
inline std::size_t retention_bound(const CqrParams& p) {
    return p.window().is_finite() ? 3 * p.window().value() + 2 : 3;
}

struct BenchReport {
    struct PerParams {
        std::string name;
        std::size_t max_retained_per_player = 0;
        std::size_t total_retained = 0;
        std::size_t bound = 0;
        bool within_bound() const noexcept { return max_retained_per_player <= bound; }
    };

    std::size_t players = 0;
    std::uint64_t actions = 0;
    std::vector<PerParams> per_params;
    std::size_t max_record_work = 0;  // largest per-ledger step count of any single record
    double elapsed_seconds = 0.0;

    bool within_bounds() const {
        for (const auto& p : per_params)
            if (!p.within_bound()) return false;
        return true;
    }
};

/// Feeds `actions` random integer deltas in [-60, 60] to uniformly chosen
/// players among `players`, then measures retention and per-event work.
inline BenchReport bench(std::size_t players, std::uint64_t actions, const std::vector<CqrParams>& params,
                         std::uint64_t seed) {
    if (players < 1 || actions < 1) throw InvalidArgument("bench needs at least one player and one action");
    Engine engine(params);
    Rng rng(seed);
    std::vector<std::string> names;
    for (std::size_t i = 0; i < players; ++i) names.push_back("p" + std::to_string(i));
    std::vector<std::uint64_t> seq(players, 0);

    BenchReport report;
    report.players = players;
    report.actions = actions;
    for (const auto& p : params) report.per_params.push_back({p.name(), 0, 0, retention_bound(p)});

    const auto start = std::chrono::steady_clock::now();
    for (std::uint64_t a = 0; a < actions; ++a) {
        const auto who = static_cast<std::size_t>(uniform_index(rng, players));
        const double value = static_cast<double>(uniform_index(rng, 121)) - 60.0;
        report.max_record_work = std::max(report.max_record_work, engine.record(names[who], Delta{value, ++seq[who]}));
    }
    report.elapsed_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

    engine.visit_ledgers([&](const std::string&, const CqrParams& p, const DeltaLedger& ledger) {
        for (auto& pp : report.per_params) {
            if (pp.name != p.name()) continue;
            pp.max_retained_per_player = std::max(pp.max_retained_per_player, ledger.retained());
            pp.total_retained += ledger.retained();
        }
    });
    return report;
}

}  // namespace cqr
