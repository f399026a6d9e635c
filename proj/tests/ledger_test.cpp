#include <gtest/gtest.h>

#include <random>
#include <vector>

#include "cqr/filters.hpp"
#include "cqr/ledger.hpp"

using namespace cqr;

namespace {

CqrParams random_params(std::mt19937_64& rng) {
    std::uniform_int_distribution<std::size_t> t(1, 17);  // 17 stands for unbounded
    const double thresholds[] = {0.0, 5.0, 10.0};
    const std::size_t window = t(rng);
    const double x = thresholds[std::uniform_int_distribution<int>(0, 2)(rng)];
    if (window == 17) {
        std::uniform_int_distribution<std::size_t> k(1, 17);
        const std::size_t run = k(rng);
        return CqrParams::make(Limit::unbounded(), x, run == 17 ? Limit::unbounded() : Limit::of(run));
    }
    return CqrParams::make(window, x, std::uniform_int_distribution<std::size_t>(1, window)(rng));
}

}  // namespace

TEST(DeltaLedger, EmptyHistoryRatesZero) {
    DeltaLedger ledger(CqrParams::make(8, 10.0, 4));
    EXPECT_EQ(ledger.cqr(), 0.0);
    EXPECT_EQ(ledger.retained(), 0u);
}

TEST(DeltaLedger, SingleDelta) {
    for (const auto& p : {CqrParams::total(), CqrParams::make(8, 0.0, 8), CqrParams::make(8, 7.0, 4)}) {
        DeltaLedger ledger(p);
        ledger.record(Delta{7.0, 1});
        EXPECT_EQ(ledger.cqr(), 7.0) << p;
    }
    DeltaLedger filtered(CqrParams::make(8, 10.0, 4));
    filtered.record(Delta{7.0, 1});
    EXPECT_EQ(filtered.cqr(), 0.0);
}

TEST(DeltaLedger, RejectsNonIncreasingSeq) {
    DeltaLedger ledger(CqrParams::make(8, 0.0, 8));
    ledger.record(Delta{1.0, 5});
    EXPECT_THROW(ledger.record(Delta{1.0, 5}, "p"), OrderError);
    EXPECT_THROW(ledger.record(Delta{1.0, 4}, "p"), OrderError);
    EXPECT_EQ(ledger.cqr(), 1.0);
    try {
        ledger.record(Delta{1.0, 3}, "alice");
        FAIL();
    } catch (const OrderError& e) {
        EXPECT_EQ(e.player(), "alice");
        EXPECT_EQ(e.seq(), 3u);
    }
}

TEST(DeltaLedger, RunStateTracksTheFilteredSuffix) {
    DeltaLedger ledger(CqrParams::make(8, 10.0, 4));
    for (double v : {12.0, -30.0, 3.0, 15.0, 20.0}) ledger.record(Delta{v, ledger.total_recorded() + 1});
    EXPECT_EQ(ledger.run_sign(), Sign::positive);
    EXPECT_EQ(ledger.run_count(), 2u);
    for (double v : {11.0, 11.0, 11.0, 11.0}) ledger.record(Delta{v, ledger.total_recorded() + 1});
    EXPECT_EQ(ledger.run_count(), 4u);  // capped at k
    EXPECT_EQ(ledger.cqr(), 12 + 15 + 20 + 11 * 4);
}

TEST(DeltaLedger, SignRunResurrectsDeltasOlderThanTheWindow) {
    // Ten positives, then eight negatives push them out of the last-8 window;
    // four new positives bring the older positives back.
    DeltaLedger ledger(CqrParams::make(8, 0.0, 4));
    std::vector<Delta> history;
    auto push = [&](double v) {
        Delta d{v, history.size() + 1};
        history.push_back(d);
        ledger.record(d);
    };
    for (int i = 1; i <= 10; ++i) push(i);
    for (int i = 0; i < 8; ++i) push(-5);
    for (int i = 0; i < 4; ++i) push(100);
    EXPECT_EQ(ledger.cqr(), cqr_batch(ledger.params(), history));
    EXPECT_EQ(ledger.cqr(), 400.0 + 10 + 9 + 8 + 7);
}

TEST(DeltaLedger, StreamingMatchesBatchAtEveryPrefix) {
    std::mt19937_64 rng(2024);
    std::uniform_int_distribution<int> val(-60, 60);
    std::uniform_int_distribution<std::size_t> len(0, 64);
    for (int trial = 0; trial < 1000; ++trial) {
        const CqrParams p = random_params(rng);
        DeltaLedger ledger(p);
        std::vector<Delta> history;
        const std::size_t n = len(rng);
        for (std::size_t i = 0; i < n; ++i) {
            Delta d{static_cast<double>(val(rng)), 3 * i + 1};
            history.push_back(d);
            ledger.record(d);
            ASSERT_EQ(ledger.cqr(), cqr_batch(p, history)) << p << " trial " << trial << " prefix " << i + 1;
        }
    }
}

TEST(DeltaLedger, StreamingMatchesBatchForRealValuedDeltas) {
    std::mt19937_64 rng(99);
    std::uniform_real_distribution<double> val(-60.0, 60.0);
    for (int trial = 0; trial < 300; ++trial) {
        const CqrParams p = random_params(rng);
        DeltaLedger ledger(p);
        std::vector<Delta> history;
        for (std::uint64_t i = 1; i <= 50; ++i) {
            history.push_back(Delta{val(rng), i});
            ledger.record(history.back());
            ASSERT_EQ(ledger.cqr(), cqr_batch(p, history)) << p;
        }
    }
}

TEST(DeltaLedger, RetentionIsBoundedIndependentlyOfHistoryLength) {
    std::mt19937_64 rng(5);
    std::uniform_int_distribution<int> val(-3, 3);  // plenty of zeros
    for (std::size_t window : {1u, 4u, 8u, 16u}) {
        DeltaLedger ledger(CqrParams::make(window, 0.0, std::max<std::size_t>(1, window / 2)));
        std::size_t peak = 0;
        for (std::uint64_t i = 1; i <= 20000; ++i) {
            ledger.record(Delta{static_cast<double>(val(rng)), i});
            peak = std::max(peak, ledger.retained());
        }
        EXPECT_LE(peak, 3 * window + 2);
        EXPECT_EQ(ledger.retained(), 3 * window);
    }
}

TEST(DeltaLedger, UnboundedWindowKeepsAccumulatorsOnly) {
    DeltaLedger total(CqrParams::total());
    DeltaLedger run(CqrParams::make(Limit::unbounded(), 0.0, Limit::of(3)));
    for (std::uint64_t i = 1; i <= 1000; ++i) {
        total.record(Delta{static_cast<double>(i % 7) - 3.0, i});
        run.record(Delta{static_cast<double>(i % 7) - 3.0, i});
    }
    EXPECT_EQ(total.retained(), 1u);
    EXPECT_EQ(run.retained(), 3u);
}

TEST(DeltaLedger, TotalChangesByExactlyTheAppendedDelta) {
    std::mt19937_64 rng(3);
    std::uniform_int_distribution<int> val(-1000, 1000);
    DeltaLedger ledger(CqrParams::total());
    for (std::uint64_t i = 1; i <= 500; ++i) {
        const double before = ledger.cqr();
        const double v = val(rng);
        ledger.record(Delta{v, i});
        EXPECT_EQ(ledger.cqr() - before, v);
    }
}

TEST(DeltaLedger, RecordWorkIsConstant) {
    DeltaLedger ledger(CqrParams::make(8, 0.0, 4));
    std::size_t peak = 0;
    for (std::uint64_t i = 1; i <= 10000; ++i) {
        ledger.record(Delta{static_cast<double>(static_cast<int>(i * 7919 % 121) - 60), i});
        peak = std::max(peak, ledger.last_record_work());
    }
    EXPECT_LE(peak, 4u * (4 + 1));
}

TEST(DeltaLedger, StateRoundTrip) {
    const auto p = CqrParams::make(6, 5.0, 3);
    DeltaLedger a(p);
    for (std::uint64_t i = 1; i <= 40; ++i) a.record(Delta{static_cast<double>(static_cast<int>(i * 37 % 41) - 20), i});
    DeltaLedger b(p, a.state());
    EXPECT_EQ(b.cqr(), a.cqr());
    for (std::uint64_t i = 41; i <= 60; ++i) {
        const Delta d{static_cast<double>(static_cast<int>(i * 13 % 29) - 14), i};
        a.record(d);
        b.record(d);
        EXPECT_EQ(b.cqr(), a.cqr());
    }
    EXPECT_THROW(b.record(Delta{1.0, 60}), OrderError);
}
