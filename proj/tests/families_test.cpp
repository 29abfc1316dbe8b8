#include <algorithm>
#include <set>

#include <gmock/gmock.h>
#include <gtest/gtest.h>

#include "qram/families.hpp"
#include "qram/verify.hpp"

using namespace qram;
using testing::HasSubstr;
using testing::ThrowsMessage;

namespace {

using i64 = std::int64_t;

FamilyConfig cfg(Family f, int n, int q = -1, int k = -1) {
    FamilyConfig c;
    c.family = f;
    c.n = n;
    c.q = q;
    c.k = k;
    return c;
}

ResourceCounts rc(i64 nq, i64 d, i64 tc, i64 td, i64 hc, i64 cnot) { return {nq, d, tc, td, hc, cnot}; }

// One lowered MPMCT with c controls, closed form.
ResourceCounts mpmct_cost(i64 c) { return rc(0, 28 * c - 60, 12 * c - 20, 4 * c - 8, 4 * c - 6, 24 * c - 40); }

}  // namespace

TEST(Memory, RandomMemoryIsDeterministic) {
    const auto a = random_memory(3, 2, 11), b = random_memory(3, 2, 11);
    EXPECT_EQ(a.ones, b.ones);
    ASSERT_EQ(a.ones.size(), 4u);
    EXPECT_EQ(std::set<std::uint64_t>(a.ones.begin(), a.ones.end()).size(), 4u);
    for (auto x : a.ones) EXPECT_LT(x, 8u);
    EXPECT_EQ(a.q(), 2);
    EXPECT_NE(random_memory(10, 5, 1).ones, random_memory(10, 5, 2).ones);
}

TEST(Memory, RandomMemoryBounds) {
    EXPECT_THROW(random_memory(3, 3, 0), Error);
    EXPECT_THROW(random_memory(3, -1, 0), Error);
    EXPECT_EQ(random_memory(3, 0, 0).ones.size(), 1u);
}

TEST(Memory, ExactPowerAndDistinct) {
    EXPECT_THROW(make_memory(3, {1, 2, 3}), Error);
    EXPECT_NO_THROW(make_memory(3, {1, 2, 3}, false));
    EXPECT_THAT([] { make_memory(3, {1, 1}); }, ThrowsMessage<Error>(HasSubstr("duplicate")));
    EXPECT_THROW(make_memory(3, {8}), Error);
    EXPECT_THROW(make_memory(3, {}), Error);
    const auto m = make_memory(3, {5, 1});
    EXPECT_EQ(m.ones, (std::vector<std::uint64_t>{1, 5}));
    EXPECT_TRUE(m.contains(5));
    EXPECT_FALSE(m.contains(4));
}

TEST(Memory, TextRoundTripAndComplement) {
    const auto m = make_memory(4, {0b0000, 0b0001, 0b0011, 0b0111});
    EXPECT_EQ(parse_memory(write_memory(m)).ones, m.ones);
    EXPECT_EQ(format_address(0b0011, 4), "0011");
    const auto c = complement(m);
    EXPECT_EQ(c.ones.size(), 12u);
    for (std::uint64_t x = 0; x < 16; ++x) EXPECT_NE(c.contains(x), m.contains(x));
    EXPECT_THAT([] { parse_memory("n=3\n000\n01\n"); }, ThrowsMessage<Error>(HasSubstr("line 3")));
}

TEST(Memory, WorstCaseConcentratesOnePrefix) {
    const auto m = worst_case_memory(9, 5, 4, 3);
    EXPECT_EQ(m.ones.size(), 32u);
    std::vector<int> per(16, 0);
    for (auto x : m.ones) ++per[x >> 5];
    EXPECT_EQ(*std::max_element(per.begin(), per.end()), 17);  // 2^(q-1) + 1
}

TEST(Formulas, SpotValues) {
    auto bbs = formula_counts(cfg(Family::BBSerial, 3));
    EXPECT_EQ((std::array{bbs.qubits, bbs.depth, bbs.t_count, bbs.t_depth, bbs.cnot_count}),
              (std::array<i64, 5>{24, 148, 140, 20, 336}));
    auto bbp = formula_counts(cfg(Family::BBParallel, 15));
    EXPECT_EQ((std::array{bbp.qubits, bbp.depth, bbp.t_count, bbp.t_depth, bbp.cnot_count}),
              (std::array<i64, 5>{262144, 235, 688100, 29, 1769376}));
    EXPECT_EQ(formula_counts(cfg(Family::LargeDepth, 4, 2)), rc(8, 208, 112, 32, 40, 224));
    EXPECT_EQ(formula_counts(cfg(Family::LargeWidth, 4, 2)), rc(33, 60, 112, 8, 40, 256));
    EXPECT_EQ(formula_counts(cfg(Family::Hybrid, 9, 5, 4)), rc(31, 5120, 2560, 768, 896, 5120));
}

TEST(Formulas, MatchClosedFormsOverRange) {
    for (i64 n = 4; n <= 20; ++n) {
        const i64 N = i64{1} << n;
        const auto s = formula_counts(cfg(Family::BBSerial, static_cast<int>(n)));
        EXPECT_EQ(s.qubits, n + 2 * N + 5);
        EXPECT_EQ(s.depth, 21 * N + 2 * n - 26);
        EXPECT_EQ(s.t_count, 21 * N - 28);
        EXPECT_EQ(s.t_depth, 3 * N - 4);
        EXPECT_EQ(s.cnot_count, 50 * N - 64);
        const auto p = formula_counts(cfg(Family::BBParallel, static_cast<int>(n)));
        EXPECT_EQ(p.qubits, 8 * N);
        EXPECT_EQ(p.depth, 16 * n - 5);
        EXPECT_EQ(p.t_depth, 2 * n - 1);
        EXPECT_EQ(p.cnot_count, 54 * N - 2 * n - 66);
        for (i64 q = 0; q < n; ++q) {
            const i64 Q = i64{1} << q;
            const auto one = mpmct_cost(n);
            const auto d = formula_counts(cfg(Family::LargeDepth, static_cast<int>(n), static_cast<int>(q)));
            EXPECT_EQ(d, rc(2 * n, Q * one.depth, Q * one.t_count, Q * one.t_depth, Q * one.h_count, Q * one.cnot_count));
            const auto w = formula_counts(cfg(Family::LargeWidth, static_cast<int>(n), static_cast<int>(q)));
            EXPECT_EQ(w, rc(n * 2 * Q + 1, 28 * n + 3 * q - 58, Q * one.t_count, one.t_depth, Q * one.h_count,
                            Q * (26 * n - 38) - 2 * n));
        }
    }
}

// Two top-tier sweeps of 2^k MPMCTs on k controls plus 2^q bottom MPMCTs on
// n - k + 1 controls, all sequential.
TEST(Formulas, HybridIsSumOfTiers) {
    for (int n = 7; n <= 16; ++n)
        for (int q = 1; q < n; ++q)
            for (int k = 4; k <= n - 3 && k < q; ++k) {
                const i64 K = i64{1} << k, Q = i64{1} << q;
                const auto top = mpmct_cost(k), bot = mpmct_cost(n - k + 1);
                const auto f = formula_counts(cfg(Family::Hybrid, n, q, k));
                EXPECT_EQ(f.depth, 2 * K * top.depth + Q * bot.depth);
                EXPECT_EQ(f.t_count, 2 * K * top.t_count + Q * bot.t_count);
                EXPECT_EQ(f.t_depth, 2 * K * top.t_depth + Q * bot.t_depth);
                EXPECT_EQ(f.h_count, 2 * K * top.h_count + Q * bot.h_count);
                EXPECT_EQ(f.cnot_count, 2 * K * top.cnot_count + Q * bot.cnot_count);
                EXPECT_EQ(f.qubits, n + K + 1 + std::max(k - 1, n - k));
            }
}

TEST(Formulas, Errors) {
    EXPECT_THAT([] { formula_counts(cfg(Family::LargeDepth, 3, 1)); }, ThrowsMessage<Error>(HasSubstr("n ≥ 4 required")));
    EXPECT_THAT([] { formula_counts(cfg(Family::Hybrid, 9, 4, 4)); },
                ThrowsMessage<Error>(HasSubstr("use the circuit builder")));
    EXPECT_THROW(formula_counts(cfg(Family::Hybrid, 9, 5, 3)), Error);
    EXPECT_THROW(formula_counts(cfg(Family::Hybrid, 9, 5)), Error);
    EXPECT_THROW(formula_counts(cfg(Family::HybridParallel, 9, 5, 4)), Error);
    EXPECT_THROW(formula_counts(cfg(Family::LargeWidth, 6, 6)), Error);
    EXPECT_FALSE(has_closed_form(cfg(Family::HybridT1Parallel, 9, 5, 4)));
}

TEST(Families, NamesRoundTrip) {
    for (Family f : all_families()) EXPECT_EQ(parse_family(family_name(f)), f);
    EXPECT_EQ(all_families().size(), 10u);
    EXPECT_THAT([] { parse_family("bb"); }, ThrowsMessage<Error>(HasSubstr("unknown family")));
}

TEST(SelectSwap, Bounds) {
    const auto clean = selectswap_bounds(1024, 1, 1, SelectSwapMode::Clean);
    EXPECT_TRUE(clean.asymptotic_model);
    EXPECT_EQ(clean.counts.qubits, 21);
    EXPECT_EQ(clean.counts.t_count, 4104);
    EXPECT_EQ(clean.counts.t_depth, 1024);
    const auto dirty = selectswap_bounds(1024, 1, 1, SelectSwapMode::Dirty);
    EXPECT_EQ(dirty.counts.qubits, 22);
    EXPECT_EQ(dirty.counts.t_count, 8224);
    const auto wide = selectswap_bounds(16, 1, 16, SelectSwapMode::Clean);
    EXPECT_EQ(wide.counts.qubits, 24);
    EXPECT_EQ(wide.counts.t_count, 132);
    EXPECT_EQ(wide.counts.t_depth, 1 + 4);
    EXPECT_THROW(selectswap_bounds(16, 1, 17, SelectSwapMode::Clean), Error);
    EXPECT_THROW(selectswap_bounds(16, 0, 1, SelectSwapMode::Clean), Error);
}

TEST(SelectSwap, OptimalLambdaMatchesBruteForce) {
    for (i64 N : {1, 2, 7, 100, 1024, 4096})
        for (i64 b : {1, 3})
            for (auto mode : {SelectSwapMode::Clean, SelectSwapMode::Dirty}) {
                i64 best = -1, arg = 0;
                for (i64 l = 1; l <= N; ++l) {
                    const i64 m = (N + l - 1) / l;
                    const i64 t = mode == SelectSwapMode::Clean ? 4 * m + 8 * b * l : 8 * m + 32 * b * l;
                    if (best < 0 || t < best) best = t, arg = l;
                }
                const auto [l, v] = optimal_lambda(N, b, mode);
                EXPECT_EQ(l, arg) << N << " " << b;
                EXPECT_EQ(v, best) << N << " " << b;
            }
    EXPECT_EQ(optimal_lambda(1024, 1, SelectSwapMode::Clean), (std::pair<i64, i64>{21, 364}));
    EXPECT_EQ(optimal_lambda(1, 1, SelectSwapMode::Clean).first, 1);
}

TEST(SelectSwap, NoCircuitBuilder) {
    FamilyConfig c = cfg(Family::SelectSwapClean, 4, 2);
    c.lambda = 2;
    EXPECT_THROW(build_circuit(c, random_memory(4, 2, 0)), Error);
    EXPECT_EQ(formula_counts(c).t_count, 4 * 8 + 16);
}

TEST(Builders, BucketBrigadeToffoliTally) {
    for (int n = 2; n <= 8; ++n) {
        const auto t = tally_gates(build_circuit(cfg(Family::BBSerial, n), random_memory(n, n - 1, 1)));
        EXPECT_EQ(t.toffoli, 3 * (i64{1} << n) - 4) << n;
    }
}

TEST(Builders, LargeDepthSingleAddress) {
    const auto mem = make_memory(4, {0b1111});
    const Circuit c = build_circuit(cfg(Family::LargeDepth, 4, 0), mem);
    const auto t = tally_gates(c);
    EXPECT_EQ(t.mpmct, 1);
    for (const auto& g : c.gates())
        if (g.kind == GateKind::MPMCT) EXPECT_THAT(g.polarity, testing::Each(true));
}

TEST(Builders, LargeWidthCnotTally) {
    const auto t = tally_gates(build_circuit(cfg(Family::LargeWidth, 4, 2), random_memory(4, 2, 5)));
    EXPECT_EQ(t.cnot, 2 * 5 * 3 + 2);
    EXPECT_EQ(t.mpmct, 4);
}

TEST(Builders, ParameterMismatch) {
    const auto mem = random_memory(9, 5, 0);
    EXPECT_THAT([&] { build_circuit(cfg(Family::Hybrid, 9, 5), mem); }, ThrowsMessage<Error>(HasSubstr("k required")));
    EXPECT_THROW(build_circuit(cfg(Family::Hybrid, 9, 5, 7), mem), Error);
    EXPECT_THROW(build_circuit(cfg(Family::LargeDepth, 8, 5), mem), Error);
    EXPECT_THROW(build_circuit(cfg(Family::LargeDepth, 9, 4), mem), Error);
}

TEST(Builders, RegisterLayoutStartsWithAddress) {
    const Circuit c = build_circuit(cfg(Family::LargeWidth, 4, 1), random_memory(4, 1, 0));
    ASSERT_GE(c.registers().size(), 3u);
    EXPECT_EQ(c.registers()[0].role, RegisterRole::Address);
    EXPECT_EQ(c.registers()[0].first, 0);
    EXPECT_EQ(c.registers()[1].role, RegisterRole::Output);
    EXPECT_EQ(c.registers()[2].role, RegisterRole::ParityRegister);
}

TEST(Builders, LoweredCircuitMatchesCountOnlyPath) {
    for (Family f : {Family::BBSerial, Family::BBParallel, Family::LargeDepth, Family::LargeWidth}) {
        const FamilyConfig c = cfg(f, 5, 3);
        const auto mem = random_memory(5, 3, 2);
        EXPECT_EQ(count_resources(build_circuit(c, mem, true)), builder_counts(c, mem)) << family_name(f);
    }
}

TEST(Builders, AgreeWithFormulas) {
    const std::pair<Family, std::pair<int, int>> cases[] = {
        {Family::LargeDepth, {5, 3}}, {Family::LargeWidth, {5, 3}}, {Family::BBSerial, {4, 0}}, {Family::BBParallel, {6, 0}}};
    for (const auto& [f, nq] : cases) {
        for (const auto& m : check_formula_vs_builder(cfg(f, nq.first, nq.second)))
            EXPECT_TRUE(m.ok) << family_name(f) << " " << m.metric << ": " << m.formula << " vs " << m.builder;
    }
    const auto ld = check_formula_vs_builder(cfg(Family::LargeDepth, 5, 3));
    const auto tc = std::find_if(ld.begin(), ld.end(), [](const MetricCheck& m) { return m.metric == "Tc"; });
    ASSERT_NE(tc, ld.end());
    EXPECT_EQ(tc->formula, 320);
    EXPECT_EQ(tc->builder, 320);
    const auto lw = check_formula_vs_builder(cfg(Family::LargeWidth, 5, 3));
    const auto d = std::find_if(lw.begin(), lw.end(), [](const MetricCheck& m) { return m.metric == "D"; });
    EXPECT_EQ(d->formula, 91);
    EXPECT_LE(d->builder, 91);
    const auto bb = check_formula_vs_builder(cfg(Family::BBSerial, 4));
    const auto tof = std::find_if(bb.begin(), bb.end(), [](const MetricCheck& m) { return m.metric == "toffoli"; });
    EXPECT_EQ(tof->builder, 44);
}
