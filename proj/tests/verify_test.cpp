#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include <gmock/gmock.h>
#include <gtest/gtest.h>

#include "qram/verify.hpp"

using namespace qram;
using testing::HasSubstr;
using testing::ThrowsMessage;

namespace {

FamilyConfig cfg(Family f, int n, int q, int k = -1, bool relaxed = false) {
    FamilyConfig c;
    c.family = f;
    c.n = n;
    c.q = q;
    c.k = k;
    c.relaxed = relaxed;
    return c;
}

std::vector<bool> bits_of(const std::string& s) {
    std::vector<bool> v;
    for (char ch : s) v.push_back(ch == '1');
    return v;
}

Circuit random_classical(int qubits, int gates, std::uint32_t seed) {
    std::mt19937 rng(seed);
    auto pick = [&](int n) { return static_cast<int>(rng() % static_cast<std::uint32_t>(n)); };
    std::vector<Gate> out;
    for (int i = 0; i < gates; ++i) {
        std::vector<int> perm(static_cast<std::size_t>(qubits));
        std::iota(perm.begin(), perm.end(), 0);
        std::shuffle(perm.begin(), perm.end(), rng);
        switch (pick(5)) {
            case 0: out.push_back(Gate::x(perm[0])); break;
            case 1: out.push_back(Gate::cnot(perm[0], perm[1])); break;
            case 2: out.push_back(Gate::swap(perm[0], perm[1])); break;
            case 3: out.push_back(Gate::toffoli(perm[0], perm[1], perm[2])); break;
            default: out.push_back(Gate::mpmct({perm[0], perm[1], perm[2]}, {pick(2) == 1, pick(2) == 1, true}, perm[3]));
        }
    }
    return Circuit::unannotated(qubits, out);
}

std::uint64_t index_of(const std::vector<bool>& bits) {
    std::uint64_t x = 0;
    for (bool b : bits) x = (x << 1) | static_cast<std::uint64_t>(b);
    return x;
}

}  // namespace

TEST(Classical, SingleGates) {
    EXPECT_EQ(simulate_classical(Circuit::unannotated(3, {Gate::x(0)}), bits_of("000")), bits_of("100"));
    const Circuit m = Circuit::unannotated(3, {Gate::mpmct({0, 1}, {true, false}, 2)});
    EXPECT_EQ(simulate_classical(m, bits_of("010")), bits_of("010"));
    EXPECT_EQ(simulate_classical(m, bits_of("100")), bits_of("101"));
    EXPECT_THAT([] { simulate_classical(Circuit::unannotated(1, {Gate::h(0)}), {false}); },
                ThrowsMessage<Error>(HasSubstr("non-classical gate")));
    EXPECT_THROW(simulate_classical(Circuit::unannotated(2, {}), {false}), Error);
}

TEST(Classical, MpmctPolarity) {
    // Fires on control 0 = 0, control 1 = 1.
    const Circuit m = Circuit::unannotated(3, {Gate::mpmct({0, 1}, {false, true}, 2)});
    EXPECT_EQ(simulate_classical(m, bits_of("010")), bits_of("011"));
    EXPECT_EQ(simulate_classical(m, bits_of("110")), bits_of("110"));
}

TEST(State, Hadamard) {
    const auto s = simulate_state(Circuit::unannotated(1, {Gate::h(0)}), StateVector::basis(1, 0));
    EXPECT_NEAR(s.amps[0].real(), 1 / std::sqrt(2.0), 1e-12);
    EXPECT_NEAR(s.amps[1].real(), 1 / std::sqrt(2.0), 1e-12);
    EXPECT_THAT([] { StateVector::basis(21, 0); }, ThrowsMessage<Error>(HasSubstr("state too large")));
    EXPECT_THAT([] { simulate_state(Circuit::unannotated(21, {}), StateVector{}); },
                ThrowsMessage<Error>(HasSubstr("state too large")));
}

TEST(State, PhaseGates) {
    const Circuit c = Circuit::unannotated(1, {Gate::h(0), Gate::t(0), Gate::t(0), Gate::sdg(0), Gate::h(0)});
    const auto s = simulate_state(c, StateVector::basis(1, 0));
    EXPECT_NEAR(std::abs(s.amps[0]), 1.0, 1e-12);
}

TEST(Invariants, ClassicalAndStateAgree) {
    for (std::uint32_t seed = 0; seed < 20; ++seed) {
        const Circuit c = random_classical(6, 30, seed);
        for (std::uint64_t x : {0ull, 5ull, 42ull, 63ull}) {
            std::vector<bool> in(6);
            for (int i = 0; i < 6; ++i) in[static_cast<std::size_t>(i)] = (x >> (5 - i)) & 1;
            const auto out = simulate_state(c, StateVector::basis(6, x));
            EXPECT_NEAR(std::abs(out.amps[index_of(simulate_classical(c, in))]), 1.0, 1e-12);
            EXPECT_NEAR(out.norm(), 1.0, 1e-10);
        }
    }
}

TEST(Invariants, InverseRestoresInput) {
    for (std::uint32_t seed = 0; seed < 10; ++seed) {
        const Circuit c = random_classical(7, 40, seed);
        const Circuit inv = inverse(c);
        std::vector<bool> in = bits_of("1011001");
        EXPECT_EQ(simulate_classical(inv, simulate_classical(c, in)), in);
    }
    const Circuit q = Circuit::unannotated(2, {Gate::h(0), Gate::t(0), Gate::s(1), Gate::cnot(0, 1), Gate::tdg(1)});
    const Circuit back = inverse(q);
    std::vector<Gate> gates = q.gates();
    gates.insert(gates.end(), back.gates().begin(), back.gates().end());
    const auto s = simulate_state(Circuit::unannotated(2, gates), StateVector::basis(2, 2));
    EXPECT_NEAR(std::abs(s.amps[2]), 1.0, 1e-12);
}

TEST(Query, BucketBrigadeTwoBits) {
    const auto mem = make_memory(2, {0b00, 0b11});
    const Circuit c = build_circuit(cfg(Family::BBSerial, 2, 1), mem);
    const auto& addr = c.registers()[0];
    const auto& out = c.registers()[1];
    ASSERT_EQ(addr.role, RegisterRole::Address);
    ASSERT_EQ(out.role, RegisterRole::Output);
    for (std::uint64_t x = 0; x < 4; ++x) {
        std::vector<bool> in(static_cast<std::size_t>(c.num_qubits()), false);
        in[static_cast<std::size_t>(addr[0])] = x >> 1;
        in[static_cast<std::size_t>(addr[1])] = x & 1;
        EXPECT_EQ(simulate_classical(c, in)[static_cast<std::size_t>(out[0])], x == 0 || x == 3) << x;
    }
    EXPECT_TRUE(check_query_semantics(c, mem).ok());
}

TEST(Query, LargeDepthExample) {
    const auto mem = make_memory(4, {0b0000, 0b0001, 0b0011, 0b0111});
    const Circuit c = build_circuit(cfg(Family::LargeDepth, 4, 2), mem);
    const auto r = check_query_semantics(c, mem);
    EXPECT_TRUE(r.ok());
    EXPECT_EQ(r.checked, 16);
    std::vector<bool> in(static_cast<std::size_t>(c.num_qubits()), false);
    in[2] = in[3] = true;  // 0011
    const int out = c.registers()[1].first;
    EXPECT_TRUE(simulate_classical(c, in)[static_cast<std::size_t>(out)]);
    in[3] = false;  // 0010
    const auto res = simulate_classical(c, in);
    EXPECT_FALSE(res[static_cast<std::size_t>(out)]);
    EXPECT_EQ(std::count(res.begin(), res.end(), true), 1);
}

TEST(Query, EveryFamilyAtSmallSizes) {
    for (Family f : all_families()) {
        if (is_selectswap(f)) continue;
        const bool mpmct = uses_mpmct(f);
        for (int n = mpmct ? 4 : 2; n <= 5; ++n)
            for (int q = 0; q < n; ++q)
                for (int k : is_hybrid(f) ? std::vector<int>{2, n - 1} : std::vector<int>{-1})
                    for (std::uint64_t seed = 0; seed < 2; ++seed) {
                        const auto mem = random_memory(n, q, seed);
                        const auto r = check_query_semantics(cfg(f, n, q, k, is_hybrid(f)), mem);
                        EXPECT_TRUE(r.ok()) << family_name(f) << " n=" << n << " q=" << q << " k=" << k << ": "
                                            << (r.ok() ? "" : r.failures.front().detail);
                    }
    }
}

TEST(Query, HybridNineBits) {
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
        const auto mem = random_memory(9, 5, seed);
        const auto r = check_query_semantics(cfg(Family::Hybrid, 9, 5, 4), mem);
        EXPECT_TRUE(r.ok()) << seed;
        EXPECT_EQ(r.checked, 512);
    }
}

TEST(Query, ComplementBuild) {
    const auto mem = random_memory(5, 3, 9);
    FamilyConfig c = cfg(Family::LargeDepth, 5, 3);
    c.complement = true;
    EXPECT_TRUE(check_query_semantics(c, mem).ok());
    EXPECT_EQ(tally_gates(build_circuit(c, mem)).mpmct, 32 - 8);
}

TEST(Query, PlantedFaultIsReported) {
    const auto mem = random_memory(4, 2, 3);
    for (Family f : {Family::BBSerial, Family::BBParallel, Family::LargeDepth, Family::LargeWidth}) {
        const Circuit c = build_circuit(cfg(f, 4, 2), mem);
        const auto r = check_query_semantics(mutate_gate(c, default_mutation_site(c)), mem);
        EXPECT_FALSE(r.ok()) << family_name(f);
    }
    const Circuit c = Circuit::unannotated(2, {Gate::h(0)});
    EXPECT_THROW(default_mutation_site(c), Error);
    EXPECT_THROW(mutate_gate(c, 5), Error);
}

TEST(Query, WrongMemoryWidth) {
    const Circuit c = build_circuit(cfg(Family::LargeDepth, 4, 1), random_memory(4, 1, 0));
    EXPECT_THAT([&] { check_query_semantics(c, random_memory(5, 1, 0)); },
                ThrowsMessage<Error>(HasSubstr("address register")));
}

// Two 1-addresses queried together; the parity register returns to its
// even-weight superposition and the output reads 1 on both branches.
TEST(Superposition, EvenParityLargeWidth) {
    FamilyConfig c = cfg(Family::LargeWidth, 3, 1, -1, true);
    c.prepare_parity = true;
    for (std::uint64_t seed = 0; seed < 3; ++seed) {
        const auto mem = random_memory(3, 1, seed);
        const Circuit circ = build_circuit(c, mem);
        EXPECT_LE(circ.num_qubits(), kMaxStateQubits);
        EXPECT_LT(superposition_query_error(circ, mem, mem.ones), 1e-10);
        EXPECT_LT(superposition_query_error(circ, mem, {0, 1, 2, 3, 4, 5, 6, 7}), 1e-10);
    }
}

TEST(Superposition, DetectsWrongMemory) {
    FamilyConfig c = cfg(Family::LargeWidth, 3, 1, -1, true);
    c.prepare_parity = true;
    const auto mem = make_memory(3, {1, 6});
    const Circuit circ = build_circuit(c, mem);
    EXPECT_GT(superposition_query_error(circ, make_memory(3, {1, 5}), {1, 5, 6}), 0.1);
}

TEST(Unitary, SizeLimit) {
    DecompositionSpec d;
    d.kind = GateKind::MPMCT;
    d.polarity = std::vector<bool>(7, true);
    EXPECT_THROW(check_decomposition_unitary(d), Error);
    d.kind = GateKind::CNOT;
    EXPECT_THROW(check_decomposition_unitary(d), Error);
}
