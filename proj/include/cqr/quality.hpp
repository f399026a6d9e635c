#pragma once

// Community quality domains and the heuristic quality functions for a
// discussion forum and a recommendation site.

#include <functional>
#include <map>
#include <numeric>
#include <span>
#include <string>
#include <vector>

#include "cqr/error.hpp"

namespace cqr {

/// A named aspect of a community with its own quality function. Domains
/// over the same state may overlap.
template <class State>
struct QualityDomain {
    std::string id;
    std::function<double(const State&)> quality;
};

/// Sum over domains of Q(after) - Q(before), where after = action(state).
/// The action may throw to signal it is not applicable.
template <class State, class Action>
double delta_of_action(const State& state, Action&& action, std::span<const QualityDomain<State>> domains) {
    const State after = std::invoke(std::forward<Action>(action), state);
    double delta = 0.0;
    for (const auto& d : domains) delta += d.quality(after) - d.quality(state);
    return delta;
}

template <class State, class Action>
double delta_of_action(const State& state, Action&& action, const std::vector<QualityDomain<State>>& domains) {
    return delta_of_action(state, std::forward<Action>(action), std::span<const QualityDomain<State>>(domains));
}

// ---------------------------------------------------------------------------
// Discussion forum

struct Post {
    std::size_t length = 1;  // characters, positive
    std::size_t capital_chars = 0;
    std::size_t forbidden_words = 0;
};

struct ForumState {
    std::vector<Post> posts;
};

/// Mean over posts of length / ((capitals + 1) / length * (forbidden + 1)).
/// Long posts score high; capital-heavy and profane posts are penalized.
/// The +1 terms keep clean posts finite.
inline double forum_quality(const ForumState& state) {
    if (state.posts.empty()) throw InvalidArgument("forum quality of an empty post collection");
    double sum = 0.0;
    for (const Post& p : state.posts) {
        if (p.length == 0) throw InvalidArgument("post length must be positive");
        if (p.capital_chars > p.length) throw InvalidArgument("post has more capitals than characters");
        const double len = static_cast<double>(p.length);
        const double capital_ratio = static_cast<double>(p.capital_chars + 1) / len;
        sum += len / (capital_ratio * static_cast<double>(p.forbidden_words + 1));
    }
    return sum / static_cast<double>(state.posts.size());
}

// ---------------------------------------------------------------------------
// Recommendation site

/// Ratings per item. One table per user sub-community; the partition into
/// sub-communities is up to the caller.
struct RatingTable {
    std::map<std::string, std::vector<double>> ratings;
};

inline double population_variance(std::span<const double> values) {
    if (values.empty()) throw InvalidArgument("variance of an empty sample");
    const double n = static_cast<double>(values.size());
    const double mean = std::accumulate(values.begin(), values.end(), 0.0) / n;
    double ss = 0.0;
    for (double v : values) ss += (v - mean) * (v - mean);
    return ss / n;
}

/// orientation * mean over rated items of the population variance of the
/// item's ratings. With the default orientation of -1 outlying ratings
/// lower quality; +1 gives the raw variance mean. Items without ratings are
/// skipped.
inline double recsys_quality(const RatingTable& table, double orientation = -1.0) {
    if (orientation != 1.0 && orientation != -1.0) throw InvalidArgument("orientation must be +1 or -1");
    double sum = 0.0;
    std::size_t items = 0;
    for (const auto& [item, values] : table.ratings) {
        if (values.empty()) continue;
        sum += population_variance(values);
        ++items;
    }
    if (items == 0) throw InvalidArgument("recommendation quality of a table with no rated items");
    return orientation * sum / static_cast<double>(items);
}

}  // namespace cqr
