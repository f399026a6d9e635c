#pragma once

#include <algorithm>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <shared_mutex>
#include <string>
#include <string_view>
#include <vector>

#include "cqr/ledger.hpp"

namespace cqr {

struct RankingEntry {
    std::string player;
    double cqr = 0.0;
    std::size_t rank = 0;  // 1-based

    friend bool operator==(const RankingEntry&, const RankingEntry&) = default;
};

/// Sorts by cqr descending, ties by player id in ascending byte order, and
/// assigns 1-based ranks.
inline std::vector<RankingEntry> make_ranking(std::vector<RankingEntry> entries) {
    std::sort(entries.begin(), entries.end(), [](const RankingEntry& a, const RankingEntry& b) {
        if (a.cqr != b.cqr) return a.cqr > b.cqr;
        return a.player < b.player;  // char_traits<char> compares as unsigned bytes
    });
    for (std::size_t i = 0; i < entries.size(); ++i) entries[i].rank = i + 1;
    return entries;
}

/// Per-player ledgers for a set of simultaneous parameterizations.
///
/// Records for one player must be serialized by the caller; records for
/// different players may run concurrently. A ranking sees, for every player,
/// some prefix of that player's recorded deltas.
class Engine {
public:
    explicit Engine(std::vector<CqrParams> params) : state_(std::make_unique<Shared>()) {
        if (params.empty()) throw InvalidArgument("engine needs at least one parameterization");
        for (std::size_t i = 0; i < params.size(); ++i)
            for (std::size_t j = 0; j < i; ++j)
                if (params[i].name() == params[j].name())
                    throw InvalidArgument("duplicate parameterization name '" + params[i].name() + "'");
        params_ = std::move(params);
    }

    const std::vector<CqrParams>& parameterizations() const noexcept { return params_; }

    /// Updates every parameterization's ledger for the player. Throws
    /// OrderError (leaving all ledgers untouched) when delta.seq does not
    /// exceed the player's last recorded seq. Returns the largest number of
    /// elementary steps any single ledger spent on the update.
    std::size_t record(std::string_view player, const Delta& delta) {
        PlayerLedgers& p = ledgers_for(player);
        std::lock_guard lock(p.mutex);
        if (p.last_seq && delta.seq <= *p.last_seq) throw OrderError(std::string(player), delta.seq, *p.last_seq);
        std::size_t work = 0;
        for (auto& ledger : p.ledgers) {
            ledger.record(delta);
            work = std::max(work, ledger.last_record_work());
        }
        p.last_seq = delta.seq;
        return work;
    }

    /// CQR of a player under a named parameterization; 0 for unknown players.
    double cqr(std::string_view player, std::string_view parameterization) const {
        const std::size_t idx = index_of(parameterization);
        std::shared_lock map_lock(state_->mutex);
        const auto it = state_->players.find(player);
        if (it == state_->players.end()) return 0.0;
        std::lock_guard lock(it->second->mutex);
        return it->second->ledgers[idx].cqr();
    }

    std::vector<RankingEntry> ranking(std::string_view parameterization) const {
        const std::size_t idx = index_of(parameterization);
        std::vector<RankingEntry> entries;
        std::shared_lock map_lock(state_->mutex);
        entries.reserve(state_->players.size());
        for (const auto& [name, p] : state_->players) {
            std::lock_guard lock(p->mutex);
            if (!p->last_seq) continue;
            entries.push_back(RankingEntry{name, p->ledgers[idx].cqr(), 0});
        }
        return make_ranking(std::move(entries));
    }

    std::vector<std::string> players() const {
        std::shared_lock map_lock(state_->mutex);
        std::vector<std::string> out;
        out.reserve(state_->players.size());
        for (const auto& [name, p] : state_->players) out.push_back(name);
        return out;
    }

    std::size_t player_count() const {
        std::shared_lock map_lock(state_->mutex);
        return state_->players.size();
    }

    /// Read-only access to a ledger, for footprint accounting and snapshots.
    /// The callback runs under the player's lock.
    template <class Fn>
    void visit_ledgers(Fn&& fn) const {
        std::shared_lock map_lock(state_->mutex);
        for (const auto& [name, p] : state_->players) {
            std::lock_guard lock(p->mutex);
            for (std::size_t i = 0; i < p->ledgers.size(); ++i) fn(name, params_[i], p->ledgers[i]);
        }
    }

    /// Installs a player's ledgers from snapshot states, one per
    /// parameterization in configuration order.
    void restore_player(std::string_view player, const std::vector<DeltaLedger::State>& states) {
        if (states.size() != params_.size()) throw InvalidArgument("snapshot parameterization count mismatch");
        PlayerLedgers& p = ledgers_for(player);
        std::lock_guard lock(p.mutex);
        std::vector<DeltaLedger> restored;
        restored.reserve(states.size());
        std::optional<std::uint64_t> last;
        for (std::size_t i = 0; i < states.size(); ++i) {
            restored.emplace_back(params_[i], states[i]);
            if (states[i].last_seq && (!last || *states[i].last_seq > *last)) last = states[i].last_seq;
        }
        p.ledgers = std::move(restored);
        p.last_seq = last;
    }

    std::size_t index_of(std::string_view parameterization) const {
        for (std::size_t i = 0; i < params_.size(); ++i)
            if (params_[i].name() == parameterization) return i;
        throw UnknownParameterization(std::string(parameterization));
    }

private:
    struct PlayerLedgers {
        std::mutex mutex;
        std::vector<DeltaLedger> ledgers;
        std::optional<std::uint64_t> last_seq;
    };

    struct Shared {
        mutable std::shared_mutex mutex;
        std::map<std::string, std::unique_ptr<PlayerLedgers>, std::less<>> players;
    };

    PlayerLedgers& ledgers_for(std::string_view player) {
        {
            std::shared_lock map_lock(state_->mutex);
            const auto it = state_->players.find(player);
            if (it != state_->players.end()) return *it->second;
        }
        std::unique_lock map_lock(state_->mutex);
        auto [it, inserted] = state_->players.try_emplace(std::string(player));
        if (inserted) {
            it->second = std::make_unique<PlayerLedgers>();
            it->second->ledgers.reserve(params_.size());
            for (const auto& p : params_) it->second->ledgers.emplace_back(p);
        }
        return *it->second;
    }

    std::vector<CqrParams> params_;
    std::unique_ptr<Shared> state_;
};

}  // namespace cqr
