#include <cmath>

#include <gmock/gmock.h>
#include <gtest/gtest.h>

#include "qram/families.hpp"
#include "qram/ftcost.hpp"

using namespace qram;

// Large-depth beats bb-parallel while 8 n (n - 2) 2^q < 8 * 2^n (2n - 1).
TEST(Crossover, MatchesIntegerInequality) {
    for (int n = 5; n <= 40; ++n) {
        int want = -1;
        for (int q = 0; q < n; ++q) {
            const long double ld = 8.0L * n * (n - 2) * std::ldexp(1.0L, q);
            const long double bb = 8.0L * std::ldexp(1.0L, n) * (2 * n - 1);
            if (ld < bb) want = q;
        }
        EXPECT_EQ(find_crossover_q(n), want) << n;
    }
    EXPECT_EQ(find_crossover_q(15), 12);
    EXPECT_EQ(find_crossover_q(36), 31);
    EXPECT_THROW(find_crossover_q(4), Error);
}

TEST(Crossover, TracksNMinusLogN) {
    for (int n : {15, 24, 36}) EXPECT_LE(std::abs(find_crossover_q(n) - (n - std::log2(n))), 1.0) << n;
}

TEST(OptimalK, SmallCaseIsArgminOfBuilderCounts) {
    double best = 0;
    int arg = -1;
    for (int k : {4, 5}) {
        FamilyConfig c;
        c.family = Family::HybridParallel;
        c.n = 8;
        c.q = 5;
        c.k = k;
        const double cost = rough_cost(builder_counts(c));
        if (arg < 0 || cost < best) best = cost, arg = k;
    }
    EXPECT_EQ(optimal_k(8, 5), arg);
}

TEST(OptimalK, FullScale) {
    EXPECT_THAT(optimal_k(36, 35), testing::AnyOf(30, 31, 32));
}

TEST(OptimalK, ScanCoversValidRange) {
    const auto scan = hybrid_parallel_scan(10, 6);
    ASSERT_EQ(scan.size(), 4u);
    EXPECT_EQ(scan.front().first, 4);
    EXPECT_EQ(scan.back().first, 7);
    EXPECT_THROW(hybrid_parallel_scan(6, 3), Error);
    EXPECT_THROW(optimal_k(10, 10), Error);
}
