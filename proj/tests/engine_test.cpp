#include <gtest/gtest.h>

#include <algorithm>
#include <random>
#include <thread>

#include "cqr/engine.hpp"
#include "cqr/eval.hpp"
#include "cqr/filters.hpp"

using namespace cqr;

namespace {

Engine replayed_experiment() {
    Engine engine(experiment_parameterizations());
    for (const auto& e : experiment_events()) engine.record(e.player, e.delta);
    return engine;
}

}  // namespace

TEST(Engine, RejectsBadConfiguration) {
    EXPECT_THROW(Engine({}), InvalidArgument);
    EXPECT_THROW(Engine({CqrParams::make(8, 0.0, 8), CqrParams::make(8, 0.0, 8)}), InvalidArgument);
}

TEST(Engine, ExperimentValues) {
    const Engine engine = replayed_experiment();
    EXPECT_EQ(engine.cqr("F1", "(8,0,8)"), 159.0);
    EXPECT_EQ(engine.cqr("D5", "(inf,0,inf)"), -207.0);
    EXPECT_EQ(engine.cqr("F5", "(8,10,4)"), 125.0);
    EXPECT_EQ(engine.cqr("nobody", "(8,10,4)"), 0.0);
    EXPECT_THROW(engine.cqr("F1", "(9,9,9)"), UnknownParameterization);
    EXPECT_THROW(engine.ranking("(9,9,9)"), UnknownParameterization);
}

TEST(Engine, RecordsFromEveryParameterizationAtOnce) {
    Engine engine(experiment_parameterizations());
    engine.record("solo", Delta{7.0, 1});
    for (const auto& p : engine.parameterizations()) {
        if (p.threshold() <= 7.0) EXPECT_EQ(engine.cqr("solo", p.name()), 7.0) << p;
        else EXPECT_EQ(engine.cqr("solo", p.name()), 0.0) << p;
    }
}

TEST(Engine, OrderErrorLeavesLedgersUntouched) {
    Engine engine({CqrParams::total(), CqrParams::make(4, 0.0, 2)});
    engine.record("p", Delta{3.0, 10});
    try {
        engine.record("p", Delta{50.0, 10});
        FAIL() << "expected OrderError";
    } catch (const OrderError& e) {
        EXPECT_EQ(e.player(), "p");
        EXPECT_EQ(e.seq(), 10u);
        EXPECT_NE(std::string(e.what()).find("'p'"), std::string::npos);
    }
    EXPECT_EQ(engine.cqr("p", "(inf,0,inf)"), 3.0);
    EXPECT_EQ(engine.cqr("p", "(4,0,2)"), 3.0);
    engine.record("q", Delta{1.0, 1});  // seq is per player
}

TEST(Engine, RankingOrderAndTieBreak) {
    const Engine engine = replayed_experiment();
    const auto fast = engine.ranking("(8,10,4)");
    ASSERT_EQ(fast.size(), 20u);
    EXPECT_EQ(fast[0].player, "f1");
    EXPECT_EQ(fast[0].cqr, 188.0);
    EXPECT_EQ(fast[0].rank, 1u);

    const auto window = engine.ranking("(8,0,8)");
    EXPECT_EQ(window[15].player, "D5");
    EXPECT_EQ(window[15].rank, 16u);
    EXPECT_EQ(window[16].player, "d5");
    EXPECT_EQ(window[15].cqr, -63.0);
    EXPECT_EQ(window[16].cqr, -63.0);
}

TEST(Engine, RankingIsASortedPermutationAndStable) {
    std::mt19937_64 rng(17);
    std::uniform_int_distribution<int> val(-5, 5);
    std::uniform_int_distribution<int> who(0, 29);
    Engine engine({CqrParams::make(4, 0.0, 2)});
    std::vector<std::uint64_t> seq(30, 0);
    for (int i = 0; i < 2000; ++i) {
        const int p = who(rng);
        engine.record("player" + std::to_string(p), Delta{static_cast<double>(val(rng)), ++seq[p]});
    }
    const auto r = engine.ranking("(4,0,2)");
    auto players = engine.players();
    std::vector<std::string> ranked;
    for (const auto& e : r) ranked.push_back(e.player);
    std::sort(ranked.begin(), ranked.end());
    EXPECT_EQ(ranked, players);
    for (std::size_t i = 1; i < r.size(); ++i) {
        EXPECT_TRUE(r[i - 1].cqr > r[i].cqr || (r[i - 1].cqr == r[i].cqr && r[i - 1].player < r[i].player));
        EXPECT_EQ(r[i].rank, i + 1);
    }
    EXPECT_EQ(engine.ranking("(4,0,2)"), r);
}

TEST(Engine, TieBreakUsesByteOrder) {
    auto r = make_ranking({{"b", 1.0, 0}, {"B", 1.0, 0}, {"\xC3\xA9", 1.0, 0}, {"a", 1.0, 0}});
    EXPECT_EQ(r[0].player, "B");
    EXPECT_EQ(r[1].player, "a");
    EXPECT_EQ(r[2].player, "b");
    EXPECT_EQ(r[3].player, "\xC3\xA9");  // non-ASCII bytes sort after ASCII
}

TEST(Engine, SinglePlayerAndEmptyEngine) {
    Engine engine({CqrParams::total()});
    EXPECT_TRUE(engine.ranking("(inf,0,inf)").empty());
    engine.record("only", Delta{-2.0, 1});
    const auto r = engine.ranking("(inf,0,inf)");
    ASSERT_EQ(r.size(), 1u);
    EXPECT_EQ(r[0].rank, 1u);
    EXPECT_EQ(r[0].cqr, -2.0);
}

TEST(Engine, ScalingAllDeltasPreservesEveryRanking) {
    const auto params = experiment_parameterizations();
    for (double scale : {0.5, 3.0, 17.0}) {
        Engine base(params), scaled(params);
        for (auto e : experiment_events()) {
            base.record(e.player, e.delta);
            e.delta.value *= scale;
            scaled.record(e.player, e.delta);
        }
        for (const auto& p : params) {
            // Scaling also scales what the magnitude threshold sees, so scale it too.
            if (p.threshold() != 0.0) continue;
            const auto a = base.ranking(p.name());
            const auto b = scaled.ranking(p.name());
            for (std::size_t i = 0; i < a.size(); ++i) EXPECT_EQ(a[i].player, b[i].player);
        }
        for (const auto& p : params) {
            if (p.threshold() == 0.0) continue;
            Engine rescaled({CqrParams::make(p.window(), p.threshold() * scale, p.run_length(), p.name())});
            for (auto e : experiment_events()) {
                e.delta.value *= scale;
                rescaled.record(e.player, e.delta);
            }
            const auto a = base.ranking(p.name());
            const auto b = rescaled.ranking(p.name());
            for (std::size_t i = 0; i < a.size(); ++i) EXPECT_EQ(a[i].player, b[i].player);
        }
    }
}

TEST(Engine, ConcurrentWritersForDistinctPlayers) {
    const auto params = std::vector<CqrParams>{CqrParams::total(), CqrParams::make(8, 10.0, 4)};
    Engine concurrent(params), sequential(params);
    constexpr int threads = 8, per_thread = 2000;
    auto value = [](int t, int i) { return static_cast<double>((t * 7919 + i * 104729) % 121 - 60); };

    std::vector<std::thread> pool;
    for (int t = 0; t < threads; ++t)
        pool.emplace_back([&, t] {
            const std::string player = "t" + std::to_string(t);
            for (int i = 0; i < per_thread; ++i) {
                concurrent.record(player, Delta{value(t, i), static_cast<std::uint64_t>(i + 1)});
                if (i % 100 == 0) (void)concurrent.ranking(params[1].name());
            }
        });
    for (auto& th : pool) th.join();

    for (int t = 0; t < threads; ++t)
        for (int i = 0; i < per_thread; ++i)
            sequential.record("t" + std::to_string(t), Delta{value(t, i), static_cast<std::uint64_t>(i + 1)});
    for (const auto& p : params) EXPECT_EQ(concurrent.ranking(p.name()), sequential.ranking(p.name()));
}

TEST(Engine, CanMoveToAnotherThread) {
    Engine engine({CqrParams::total()});
    engine.record("a", Delta{1.0, 1});
    std::thread t([e = std::move(engine)]() mutable {
        e.record("a", Delta{2.0, 2});
        EXPECT_EQ(e.cqr("a", "(inf,0,inf)"), 3.0);
    });
    t.join();
}

TEST(Engine, MatchesBatchOracleOnRandomStreams) {
    std::mt19937_64 rng(1000);
    std::uniform_int_distribution<int> val(-60, 60);
    const auto params = std::vector<CqrParams>{CqrParams::total(), CqrParams::make(8, 0.0, 8), CqrParams::make(8, 10.0, 8),
                                               CqrParams::make(8, 10.0, 4), CqrParams::make(Limit::unbounded(), 5.0, Limit::of(2))};
    Engine engine(params);
    std::vector<Delta> history;
    for (std::uint64_t i = 1; i <= 1000; ++i) {
        history.push_back(Delta{static_cast<double>(val(rng)), i});
        engine.record("x", history.back());
    }
    for (const auto& p : params) EXPECT_EQ(engine.cqr("x", p.name()), cqr_batch(p, history)) << p;
}
