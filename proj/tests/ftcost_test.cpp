#include <cmath>

#include <gmock/gmock.h>
#include <gtest/gtest.h>

#include "qram/families.hpp"
#include "qram/ftcost.hpp"

using namespace qram;
using testing::HasSubstr;
using testing::ThrowsMessage;

namespace {

ResourceCounts counts_of(Family f, int n, int q = -1) {
    FamilyConfig c;
    c.family = f;
    c.n = n;
    c.q = q;
    return formula_counts(c);
}

bool within_factor(double got, double want, double factor) { return got <= want * factor && got >= want / factor; }

}  // namespace

TEST(Distance, DirectEvaluation) {
    EXPECT_EQ(required_distance(1e-5, 1e-10), 5);
    EXPECT_EQ(required_distance(1e-5, 1e-1), 1);
    EXPECT_EQ(required_distance(1e-5, 2e-10), 5);
    EXPECT_EQ(required_distance(1e-5, 9e-11), 7);
    EXPECT_DOUBLE_EQ(logical_error(1e-5, 5), 0.1 * 1e-9);
    EXPECT_THROW(required_distance(1e-5, 0), Error);
    EXPECT_THAT([] { required_distance(0.5, 1e-3); }, ThrowsMessage<Error>(HasSubstr("below threshold")));
    EXPECT_THAT([] { required_distance(1e-2, 1e-3); }, ThrowsMessage<Error>(HasSubstr("below threshold")));
}

TEST(Distance, SmallestOddMeetingBudget) {
    for (double pg : {1e-5, 1e-4, 1e-3})
        for (double budget : {1e-6, 1e-12, 1e-20}) {
            const int d = required_distance(pg, budget);
            EXPECT_EQ(d % 2, 1);
            EXPECT_LE(0.1 * std::pow(100 * pg, (d + 1) / 2), budget * (1 + 1e-9));
            if (d > 1) EXPECT_GT(0.1 * std::pow(100 * pg, (d - 1) / 2), budget);
        }
}

TEST(Distillation, RoundCounts) {
    const auto one = distillation_plan(1e-4, 1e-9, 1e-5);
    EXPECT_EQ(one.rounds, 1);
    EXPECT_NEAR(one.output_error(1e-4), 35e-12, 1e-20);
    const auto two = distillation_plan(1e-4, 1e-15, 1e-5);
    EXPECT_EQ(two.rounds, 2);
    EXPECT_NEAR(two.errors[1] / (35 * std::pow(3.5e-11, 3)), 1.0, 1e-12);
    EXPECT_NEAR(two.errors[1], 1.5e-30, 0.1e-30);
    const auto none = distillation_plan(1e-4, 1e-3, 1e-5);
    EXPECT_EQ(none.rounds, 0);
    EXPECT_EQ(none.footprint_logical, 0);
    EXPECT_DOUBLE_EQ(none.output_error(1e-4), 1e-4);
}

TEST(Distillation, FootprintAndTiming) {
    const auto two = distillation_plan(1e-4, 1e-15, 1e-5);
    ASSERT_EQ(two.distances.size(), 2u);
    EXPECT_EQ(two.footprint_logical, 32);
    double phys = 0;
    std::int64_t latency = 0, period = 0;
    for (int d : two.distances) {
        phys += 16 * 2.0 * (d + 1) * (d + 1);
        latency += 10 * d;
        period = std::max<std::int64_t>(period, 10 * d);
    }
    EXPECT_DOUBLE_EQ(two.physical_per_factory, phys);
    EXPECT_EQ(two.latency, latency);
    EXPECT_EQ(two.period, period);
    EXPECT_THROW(distillation_plan(0.5, 1e-10, 1e-5), Error);
}

TEST(Factories, CeilingOfWidth) {
    EXPECT_EQ(factory_count({24, 148, 140, 20, 0, 336}), 7);
    EXPECT_EQ(factory_count({24, 148, 0, 0, 0, 336}), 0);
    EXPECT_EQ(factory_count(counts_of(Family::LargeDepth, 36, 35)), 4);
    EXPECT_THROW(factory_count({1, 1, 5, 0, 0, 0}), Error);
}

TEST(Estimate, CliffordOnlyLimit) {
    const ResourceCounts c{10, 100, 0, 0, 5, 50};
    const auto e = estimate_physical(c);
    EXPECT_EQ(e.factories, 0);
    EXPECT_DOUBLE_EQ(e.cycles, 100.0 * e.distance);
    EXPECT_DOUBLE_EQ(e.physical_qubits, 10 * 2.0 * (e.distance + 1) * (e.distance + 1));
    EXPECT_DOUBLE_EQ(e.rough_cost, 0);
}

TEST(Estimate, IncompleteCountsRejected) {
    EXPECT_THROW(estimate_physical({21, 0, 4104, 1024, 0, 0}), Error);
    SurfaceCodeParams p;
    p.p_g = 0.5;
    EXPECT_THAT([&] { estimate_physical(counts_of(Family::BBSerial, 4), p); },
                ThrowsMessage<Error>(HasSubstr("below threshold")));
    p = {};
    p.eps = 0;
    EXPECT_THROW(estimate_physical(counts_of(Family::BBSerial, 4), p), Error);
}

TEST(Estimate, TableRowsWithinFactorTen) {
    struct Row {
        Family f;
        int n, q;
        double seconds, qubits;
    };
    const Row rows[] = {
        {Family::BBParallel, 15, -1, 3.48e-4, 2.89e8}, {Family::LargeWidth, 15, 14, 6.24e-4, 5.84e8},
        {Family::LargeDepth, 15, 14, 7.86, 4.23e4},    {Family::BBParallel, 36, -1, 2.13e-3, 1.50e15},
        {Family::LargeWidth, 36, 35, 4.35e-3, 7.06e15}, {Family::LargeDepth, 36, 35, 7.55e7, 2.80e5},
    };
    for (const auto& r : rows) {
        const auto e = estimate_physical(counts_of(r.f, r.n, r.q));
        EXPECT_TRUE(within_factor(e.seconds, r.seconds, 10)) << family_name(r.f) << " " << r.n << ": " << e.seconds;
        EXPECT_TRUE(within_factor(e.physical_qubits, r.qubits, 10))
            << family_name(r.f) << " " << r.n << ": " << e.physical_qubits;
    }
}

TEST(Estimate, CyclesMonotoneInEveryCount) {
    const ResourceCounts base{1000, 5000, 40000, 400, 0, 0};
    const auto e0 = estimate_physical(base);
    for (int field = 0; field < 4; ++field) {
        ResourceCounts up = base;
        std::int64_t* f[] = {&up.qubits, &up.depth, &up.t_count, &up.t_depth};
        *f[field] *= 4;
        const auto e = estimate_physical(up);
        EXPECT_GE(e.cycles, e0.cycles) << field;
        if (field < 3) EXPECT_GE(e.physical_qubits, e0.physical_qubits) << field;
    }
}

// Factories scale as ceil(T_c / T_d), so doubling T_d halves them.
TEST(Estimate, TDepthTradesFactoriesForTime) {
    const ResourceCounts a{1000, 5000, 40000, 400, 0, 0};
    ResourceCounts b = a;
    b.t_depth *= 2;
    const auto ea = estimate_physical(a), eb = estimate_physical(b);
    EXPECT_EQ(eb.factories * 2, ea.factories);
    EXPECT_GE(eb.cycles, ea.cycles);
}

TEST(Estimate, TimeScalesWithCycleLength) {
    SurfaceCodeParams slow;
    slow.cycle_ns = 1000;
    const auto c = counts_of(Family::LargeWidth, 10, 5);
    EXPECT_NEAR(estimate_physical(c, slow).seconds / estimate_physical(c).seconds, 5.0, 1e-12);
}

TEST(Cost, Metrics) {
    EXPECT_DOUBLE_EQ(cost_metric(1, 1), 0);
    EXPECT_DOUBLE_EQ(cost_metric(4, 8), 5);
    EXPECT_THROW(cost_metric(0, 1), Error);
    EXPECT_THROW(cost_metric(1, -1), Error);
    const double ld = rough_cost(counts_of(Family::LargeDepth, 36, 35));
    EXPECT_NEAR(ld, std::log2(72.0 * 4 * std::ldexp(1.0, 35) * 34), 1e-9);
    EXPECT_NEAR(ld, 48.26, 0.01);
    EXPECT_LT(std::abs(ld - rough_cost(counts_of(Family::LargeWidth, 36, 35))), 0.01);
    EXPECT_THROW(rough_cost(ResourceCounts{}), Error);
}

TEST(Cost, OnOffRule) {
    EXPECT_EQ(onoff_decision(100, 40, 30), OnOff::TurnOff);
    EXPECT_EQ(onoff_decision(50, 40, 30), OnOff::KeepOn);
    EXPECT_EQ(onoff_decision(70, 40, 30), OnOff::KeepOn);
}
