#pragma once

// Scripted players for the clustering game and the round-robin session
// driver that feeds their deltas into an engine.

#include <string>
#include <utility>
#include <vector>

#include "cqr/clustering.hpp"
#include "cqr/engine.hpp"
#include "cqr/event_log.hpp"
#include "cqr/player_class.hpp"
#include "cqr/quality.hpp"
#include "cqr/random.hpp"

namespace cqr {

struct AgentPolicy {
    std::string player;
    PlayerClass player_class = PlayerClass::F;
    std::size_t switch_at = 11;  // 1-based action index where f turns fair and d turns disruptive
    std::uint64_t seed = 0;
    std::size_t proposals = 16;  // candidate drags considered per action
};

/// True when the policy acts fairly at the given 1-based action index.
inline bool is_fair_at(const AgentPolicy& policy, std::size_t step_index) {
    switch (policy.player_class) {
        case PlayerClass::F: return true;
        case PlayerClass::D: return false;
        case PlayerClass::f: return step_index >= policy.switch_at;
        case PlayerClass::d: return step_index < policy.switch_at;
    }
    return true;
}

/// One drag decision. The agent draws `proposals` candidate drags (a
/// uniformly random dot moved to a uniformly random point of the board) and
/// keeps the one giving the highest resulting quality when acting fairly,
/// or the lowest when acting disruptively. The first candidate wins ties.
inline DragAction agent_step(const AgentPolicy& policy, const Board& board, std::size_t step_index, Rng& rng) {
    if (policy.switch_at < 1) throw InvalidArgument("switch_at must be at least 1");
    if (policy.proposals < 1) throw InvalidArgument("an agent needs at least one proposal per step");
    const auto& dots = board.dots();
    if (dots.empty()) throw InvalidArgument("agent step on an empty board");

    const bool fair = is_fair_at(policy, step_index);
    std::vector<Dot> scratch = dots;
    DragAction best{policy.player, 0, {}};
    double best_quality = 0.0;
    for (std::size_t i = 0; i < policy.proposals; ++i) {
        const auto idx = static_cast<std::size_t>(uniform_index(rng, dots.size()));
        const Position target{uniform_real(rng, 0.0, board.width()), uniform_real(rng, 0.0, board.height())};

        scratch[idx].position = target;
        const double q = clustering_quality(std::span<const Dot>(scratch));
        scratch[idx].position = dots[idx].position;

        if (i == 0 || (fair ? q > best_quality : q < best_quality)) {
            best_quality = q;
            best.dot = dots[idx].id;
            best.target = target;
        }
    }
    return best;
}

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

/// `per_class` players of each class named F1.., f1.., d1.., D1.., each with
/// its own seed derived from the session seed.
inline std::vector<AgentPolicy> default_policies(std::size_t per_class, std::size_t switch_at, std::uint64_t seed,
                                                 std::size_t proposals = 16) {
    std::vector<AgentPolicy> out;
    for (PlayerClass c : all_player_classes)
        for (std::size_t i = 1; i <= per_class; ++i) {
            AgentPolicy p;
            p.player = std::string(1, to_char(c)) + std::to_string(i);
            p.player_class = c;
            p.switch_at = switch_at;
            p.seed = splitmix64(seed ^ splitmix64(out.size() + 1));
            p.proposals = proposals;
            out.push_back(std::move(p));
        }
    return out;
}

struct SessionOptions {
    std::size_t max_retries = 3;  // fresh agent steps tried after a lock error
    bool log_actions = false;     // log drag actions instead of deltas
};

struct SessionResult {
    std::vector<EventRecord> log;
    std::vector<std::pair<std::string, std::vector<RankingEntry>>> rankings;  // per parameterization
    Board board;
};

/// The clustering game as a single quality domain.
inline std::vector<QualityDomain<Board>> clustering_domains() {
    return {QualityDomain<Board>{clustering_domain, [](const Board& b) { return b.quality(); }}};
}

/// Round-robin session: every round each policy performs one drag, whose
/// delta is recorded into the engine under seq = round number. A drag that
/// hits a lock is retried with a fresh step; after max_retries the turn is
/// skipped and recorded as a zero delta. Rankings include every policy's
/// player, at CQR 0 if it never acted.
inline SessionResult run_session(const std::vector<AgentPolicy>& policies, std::size_t actions_per_player, Board board,
                                 Engine& engine, const SessionOptions& options = {}) {
    std::vector<Rng> rngs;
    rngs.reserve(policies.size());
    for (const auto& p : policies) rngs.emplace_back(p.seed);

    const auto domains = clustering_domains();
    SessionResult result{{}, {}, board};

    for (std::size_t round = 1; round <= actions_per_player; ++round) {
        for (std::size_t i = 0; i < policies.size(); ++i) {
            const AgentPolicy& policy = policies[i];
            EventRecord record{round, policy.player, 0.0};
            double delta = 0.0;
            for (std::size_t attempt = 0; attempt <= options.max_retries; ++attempt) {
                const DragAction action = agent_step(policy, result.board, round, rngs[i]);
                try {
                    Board next = apply_drag(result.board, action);
                    delta = delta_of_action(result.board, [&](const Board&) { return next; }, domains);
                    result.board = std::move(next);
                    if (options.log_actions) record.payload = ClusteringMove{action.dot, action.target};
                    break;
                } catch (const LockError&) {
                    delta = 0.0;
                }
            }
            if (!options.log_actions) record.payload = delta;
            engine.record(policy.player, Delta{delta, round});
            result.log.push_back(std::move(record));
        }
    }

    for (const auto& params : engine.parameterizations()) {
        std::vector<RankingEntry> entries;
        for (const auto& p : policies) entries.push_back(RankingEntry{p.player, engine.cqr(p.player, params.name()), 0});
        result.rankings.emplace_back(params.name(), make_ranking(std::move(entries)));
    }
    return result;
}

}  // namespace cqr
