#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <deque>
#include <optional>
#include <string>
#include <vector>

#include "cqr/params.hpp"

namespace cqr {

/// Streaming state of one parameterization for one player.
///
/// For a finite window T the ledger keeps the most recent T filtered deltas
/// of each sign class (positive, negative, zero). The sign-run filter can
/// bring back same-sign deltas older than the last T filtered entries, so a
/// single window of T would not be enough; three per-class windows are, and
/// keep retention at 3T independent of how many deltas were recorded.
///
/// For an unbounded window only running sums are kept.
class DeltaLedger {
public:
    /// Plain-data image of the ledger, used for snapshots.
    struct State {
        std::array<std::vector<Delta>, 3> classes;
        Sign run_sign = Sign::zero;
        std::size_t run_count = 0;
        std::uint64_t total_recorded = 0;
        std::optional<std::uint64_t> last_seq;
        double positive_sum = 0.0;
        double negative_sum = 0.0;
        double filtered_sum = 0.0;
    };

    explicit DeltaLedger(CqrParams params) : params_(std::move(params)) {}

    DeltaLedger(CqrParams params, const State& state) : params_(std::move(params)) {
        for (std::size_t c = 0; c < 3; ++c) {
            if (params_.window().is_finite() && state.classes[c].size() > params_.window().value())
                throw InvalidArgument("ledger snapshot exceeds window capacity");
            classes_[c].assign(state.classes[c].begin(), state.classes[c].end());
        }
        run_sign_ = state.run_sign;
        run_count_ = state.run_count;
        total_recorded_ = state.total_recorded;
        last_seq_ = state.last_seq;
        positive_sum_ = state.positive_sum;
        negative_sum_ = state.negative_sum;
        filtered_sum_ = state.filtered_sum;
    }

    const CqrParams& params() const noexcept { return params_; }

    /// Records one delta. Throws OrderError unless delta.seq exceeds every
    /// previously recorded seq.
    void record(const Delta& delta, const std::string& player = {}) {
        if (last_seq_ && delta.seq <= *last_seq_) throw OrderError(player, delta.seq, *last_seq_);
        last_seq_ = delta.seq;
        ++total_recorded_;
        last_work_ = 1;

        if (std::abs(delta.value) < params_.threshold()) return;

        const Sign s = sign_of(delta.value);
        update_run(s);
        ++last_work_;

        if (params_.window().is_unbounded()) {
            filtered_sum_ += delta.value;
            if (s == Sign::positive) positive_sum_ += delta.value;
            if (s == Sign::negative) negative_sum_ += delta.value;
            ++last_work_;
            return;
        }

        auto& bucket = classes_[static_cast<std::size_t>(s)];
        bucket.push_back(delta);
        ++last_work_;
        if (bucket.size() > params_.window().value()) {
            bucket.pop_front();
            ++last_work_;
        }
    }

    /// Current rating; 0 for an empty history.
    double cqr() const {
        const Sign run = active_run();
        if (params_.window().is_unbounded()) {
            if (run == Sign::positive) return positive_sum_;
            if (run == Sign::negative) return negative_sum_;
            return filtered_sum_;
        }

        // Merge the surviving classes newest-first until T entries are taken,
        // then sum oldest-first so the order of additions matches the batch
        // reference.
        std::array<bool, 3> use{true, true, true};
        if (run == Sign::positive) use[static_cast<std::size_t>(Sign::negative)] = false;
        if (run == Sign::negative) use[static_cast<std::size_t>(Sign::positive)] = false;

        std::array<std::size_t, 3> remaining{};
        for (std::size_t c = 0; c < 3; ++c) remaining[c] = use[c] ? classes_[c].size() : 0;

        const std::size_t window = params_.window().value();
        std::vector<double> picked;
        picked.reserve(window);
        auto newest_seq = [&](std::size_t c) { return classes_[c][remaining[c] - 1].seq; };
        while (picked.size() < window) {
            std::optional<std::size_t> best;
            for (std::size_t c = 0; c < 3; ++c) {
                if (remaining[c] == 0) continue;
                if (!best || newest_seq(c) > newest_seq(*best)) best = c;
            }
            if (!best) break;
            picked.push_back(classes_[*best][--remaining[*best]].value);
        }

        double sum = 0.0;
        for (auto it = picked.rbegin(); it != picked.rend(); ++it) sum += *it;
        return sum;
    }

    /// Number of retained deltas (finite T) or running accumulators
    /// (unbounded T).
    std::size_t retained() const noexcept {
        if (params_.window().is_unbounded()) return params_.run_length().is_unbounded() ? 1 : 3;
        return classes_[0].size() + classes_[1].size() + classes_[2].size();
    }

    /// Elementary steps performed by the most recent record() call.
    std::size_t last_record_work() const noexcept { return last_work_; }

    std::uint64_t total_recorded() const noexcept { return total_recorded_; }
    std::optional<std::uint64_t> last_seq() const noexcept { return last_seq_; }
    Sign run_sign() const noexcept { return run_sign_; }
    std::size_t run_count() const noexcept { return run_count_; }

    State state() const {
        State s;
        for (std::size_t c = 0; c < 3; ++c) s.classes[c].assign(classes_[c].begin(), classes_[c].end());
        s.run_sign = run_sign_;
        s.run_count = run_count_;
        s.total_recorded = total_recorded_;
        s.last_seq = last_seq_;
        s.positive_sum = positive_sum_;
        s.negative_sum = negative_sum_;
        s.filtered_sum = filtered_sum_;
        return s;
    }

private:
    void update_run(Sign s) {
        if (params_.run_length().is_unbounded()) return;
        if (s == Sign::zero) {
            run_sign_ = Sign::zero;
            run_count_ = 0;
            return;
        }
        if (s == run_sign_) {
            if (run_count_ < params_.run_length().value()) ++run_count_;
        } else {
            run_sign_ = s;
            run_count_ = 1;
        }
    }

    Sign active_run() const noexcept {
        if (params_.run_length().is_unbounded() || run_sign_ == Sign::zero) return Sign::zero;
        return run_count_ >= params_.run_length().value() ? run_sign_ : Sign::zero;
    }

    CqrParams params_;
    std::array<std::deque<Delta>, 3> classes_;
    Sign run_sign_ = Sign::zero;
    std::size_t run_count_ = 0;
    std::uint64_t total_recorded_ = 0;
    std::optional<std::uint64_t> last_seq_;
    double positive_sum_ = 0.0;
    double negative_sum_ = 0.0;
    double filtered_sum_ = 0.0;
    std::size_t last_work_ = 0;
};

}  // namespace cqr
