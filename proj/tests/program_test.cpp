#include <gtest/gtest.h>

#include "qram/families.hpp"
#include "qram/program.hpp"

using namespace qram;

namespace {

Operand op(int reg, std::int64_t base, std::vector<Stair> stairs = {}) { return {reg, base, std::move(stairs)}; }

// Fan-out, a staircase of CNOTs and Toffolis on one ancilla set, then a
// parallel Toffoli layer.
Program sample_program(std::int64_t steps) {
    Program p;
    const int a = p.add_register("a", RegisterRole::Address, steps + 1);
    const int b = p.add_register("b", RegisterRole::Copy, steps);
    const int out = p.add_register("out", RegisterRole::Output, 1);
    const int t = p.add_register("t", RegisterRole::Ancilla, 2 * steps);
    const int anc = p.add_register("anc", RegisterRole::Ancilla, 8);
    Block h{GateKind::H, {op(a, 0)}};
    h.count = steps + 1;
    p.ops.push_back(h);
    Loop loop;
    loop.iterations = steps;
    Block cx{GateKind::CNOT, {op(a, 0, {{0, steps, 0, 1}}), op(out, 0)}};
    Block tof{GateKind::TOFFOLI, {op(a, 0, {{0, steps, 0, 1}}), op(b, 0, {{0, steps, 0, 1}}), op(t, 0, {{0, steps, 0, 1}})},
              {op(anc, 0), op(anc, 1), op(anc, 2), op(anc, 3)}};
    loop.body = {cx, tof};
    p.ops.push_back(loop);
    // Instance i takes ancillae i, i + 2, i + 4, i + 6.
    Block par{GateKind::TOFFOLI, {op(a, 0), op(t, 0), op(t, steps)}, {op(anc, 0), op(anc, 2), op(anc, 4), op(anc, 6)}};
    par.count = std::min<std::int64_t>(steps, 2);
    p.ops.push_back(par);
    return p;
}

}  // namespace

TEST(Program, OperandStairs) {
    const Operand o = op(0, 2, {{1, 5, 10, 2}});
    EXPECT_EQ(o.at(0, 0), 2);
    EXPECT_EQ(o.at(1, 1), 13);
    EXPECT_EQ(o.at(0, 4), 13);
    EXPECT_EQ(o.at(0, 5), 2);
}

TEST(Program, MaterializeAndTally) {
    const Program p = sample_program(5);
    const Circuit c = materialize(p, false);
    const auto t = tally_gates(c);
    const auto b = tally_program(p);
    EXPECT_EQ(t.toffoli, b.toffoli);
    EXPECT_EQ(t.cnot, b.cnot);
    EXPECT_EQ(t.h, b.h);
    EXPECT_EQ(c.num_qubits(), p.qubits());
    EXPECT_EQ(b.toffoli, 5 + 2);
}

TEST(Program, SymbolicCountsMatchMaterialized) {
    for (std::int64_t steps : {1, 2, 3, 7, 20}) {
        const Program p = sample_program(steps);
        EXPECT_EQ(count_program(p), count_resources(materialize(p, true))) << steps;
    }
}

// Every buildable family, small sizes, against full lowering plus ASAP.
TEST(Program, FamilyCountsMatchMaterialized) {
    int checked = 0;
    for (Family f : all_families()) {
        if (is_selectswap(f)) continue;
        for (int n = 4; n <= 8; ++n)
            for (int q = 0; q < n; ++q) {
                std::vector<int> ks{-1};
                if (is_hybrid(f)) {
                    ks.clear();
                    for (int k = 4; k <= n - 3; ++k) ks.push_back(k);
                }
                for (int k : ks) {
                    FamilyConfig c;
                    c.family = f;
                    c.n = n;
                    c.q = q;
                    c.k = k;
                    const auto mem = is_hybrid(f) ? worst_case_memory(n, q, k, 1) : random_memory(n, q, 1);
                    const Program p = build_program(c, mem);
                    EXPECT_EQ(count_program(p), count_resources(materialize(p, true)))
                        << family_name(f) << " n=" << n << " q=" << q << " k=" << k;
                    ++checked;
                }
            }
    }
    EXPECT_GT(checked, 100);
}

TEST(Program, TooLargeToMaterialize) {
    FamilyConfig c;
    c.family = Family::BBParallel;
    c.n = 30;
    EXPECT_THROW(materialize(build_program(c), false), Error);
    EXPECT_EQ(count_program(build_program(c)), builder_counts(c));
}
