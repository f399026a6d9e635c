#pragma once

// Batch form of the rating expression. These functions take the whole
// history and are the reference the streaming ledger is checked against.

#include <algorithm>
#include <cmath>
#include <span>
#include <vector>

#include "cqr/params.hpp"

namespace cqr {

/// Drops every delta with |value| < threshold, keeping order.
inline std::vector<Delta> magnitude_filter(std::span<const Delta> deltas, double threshold) {
    std::vector<Delta> out;
    out.reserve(deltas.size());
    for (const auto& d : deltas)
        if (std::abs(d.value) >= threshold) out.push_back(d);
    return out;
}

/// If the last k entries are all strictly positive, removes every strictly
/// negative entry from the whole list; symmetric for a negative run. Zeros
/// break runs and are never removed. An unbounded k requires the whole list
/// to be a run, which leaves it unchanged either way.
inline std::vector<Delta> sign_run_filter(std::span<const Delta> deltas, Limit run_length) {
    std::vector<Delta> out(deltas.begin(), deltas.end());
    const std::size_t k = run_length.is_unbounded() ? deltas.size() : run_length.value();
    if (k == 0 || deltas.size() < k) return out;

    const auto tail = deltas.subspan(deltas.size() - k);
    const Sign s = sign_of(tail.front().value);
    if (s == Sign::zero) return out;
    if (!std::all_of(tail.begin(), tail.end(), [s](const Delta& d) { return sign_of(d.value) == s; })) return out;

    const Sign opposite = s == Sign::positive ? Sign::negative : Sign::positive;
    std::erase_if(out, [opposite](const Delta& d) { return sign_of(d.value) == opposite; });
    return out;
}

/// Sum of the last min(T, n) values, in order.
inline double windowed_sum(std::span<const Delta> deltas, Limit window) {
    const std::size_t n = deltas.size();
    const std::size_t first = window.is_unbounded() || window.value() >= n ? 0 : n - window.value();
    double sum = 0.0;
    for (std::size_t i = first; i < n; ++i) sum += deltas[i].value;
    return sum;
}

/// Full pipeline: magnitude filter over the whole history, then sign-run
/// removal over the whole filtered history, then the last-T window.
inline double cqr_batch(const CqrParams& params, std::span<const Delta> deltas) {
    const auto filtered = magnitude_filter(deltas, params.threshold());
    const auto run_filtered = sign_run_filter(filtered, params.run_length());
    return windowed_sum(run_filtered, params.window());
}

/// Convenience for plain values; seq numbers are assigned 1..n.
inline std::vector<Delta> to_deltas(std::span<const double> values) {
    std::vector<Delta> out;
    out.reserve(values.size());
    std::uint64_t seq = 0;
    for (double v : values) out.push_back(Delta{v, ++seq});
    return out;
}

}  // namespace cqr
