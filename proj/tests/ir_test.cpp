#include <gmock/gmock.h>
#include <gtest/gtest.h>

#include "qram/ir.hpp"

using namespace qram;
using testing::HasSubstr;
using testing::ThrowsMessage;

namespace {

Circuit wires(int n, std::vector<Gate> gates) { return Circuit::unannotated(n, std::move(gates)); }

}  // namespace

TEST(Gate, ValidateRejectsBadOperands) {
    EXPECT_THAT([] { Gate::cnot(1, 1).validate(); }, ThrowsMessage<Error>(HasSubstr("duplicate operand")));
    EXPECT_THAT([] { Gate::x(-1).validate(); }, ThrowsMessage<Error>(HasSubstr("negative")));
    EXPECT_THAT(([] { Gate{GateKind::MPMCT, {0, 1}, {true}}.validate(); }),
                ThrowsMessage<Error>(HasSubstr("at least 2 controls")));
    EXPECT_THAT(([] { Gate{GateKind::MPMCT, {0, 1, 2}, {true}}.validate(); }),
                ThrowsMessage<Error>(HasSubstr("polarity length")));
    EXPECT_THAT(([] { Gate{GateKind::CNOT, {0, 1}, {true, true}}.validate(); }),
                ThrowsMessage<Error>(HasSubstr("non-MPMCT")));
    EXPECT_THROW(Gate(GateKind::TOFFOLI, {0, 1}, {}).validate(), Error);
    EXPECT_NO_THROW(Gate::mpmct({0, 1, 2}, {true, false, true}, 3).validate());
}

TEST(Gate, ControlsAndTarget) {
    const Gate g = Gate::mpmct({4, 2, 7}, {true, false, true}, 1);
    EXPECT_EQ(g.target(), 1);
    EXPECT_THAT(std::vector<int>(g.controls().begin(), g.controls().end()), testing::ElementsAre(4, 2, 7));
    EXPECT_TRUE(Gate::x(0).controls().empty());
}

TEST(Circuit, RegistersMustPartitionQubits) {
    const std::vector<Register> gap = {{"a", RegisterRole::Address, 0, 2}, {"b", RegisterRole::Output, 3, 1}};
    EXPECT_THAT([&] { Circuit(4, gap, {}); }, ThrowsMessage<Error>(HasSubstr("not in any register")));
    const std::vector<Register> overlap = {{"a", RegisterRole::Address, 0, 3}, {"b", RegisterRole::Output, 2, 2}};
    EXPECT_THAT([&] { Circuit(4, overlap, {}); }, ThrowsMessage<Error>(HasSubstr("in two registers")));
    const std::vector<Register> dup = {{"a", RegisterRole::Address, 0, 2}, {"a", RegisterRole::Output, 2, 2}};
    EXPECT_THAT([&] { Circuit(4, dup, {}); }, ThrowsMessage<Error>(HasSubstr("duplicate register")));
    EXPECT_THAT([] { wires(2, {Gate::cnot(0, 2)}); }, ThrowsMessage<Error>(HasSubstr("out of range")));
}

TEST(Circuit, RegisterLookup) {
    const Circuit c(3, {{"addr", RegisterRole::Address, 0, 2}, {"out", RegisterRole::Output, 2, 1}}, {});
    EXPECT_EQ(c.reg("out").first, 2);
    EXPECT_EQ(c.find_register("nope"), nullptr);
    EXPECT_THROW(c.reg("nope"), Error);
}

TEST(Schedule, EmptyCircuitHasNoLayers) {
    const auto s = schedule_asap(wires(3, {}));
    EXPECT_TRUE(s.layers.empty());
    EXPECT_EQ(s.depth(), 0u);
}

TEST(Schedule, DisjointGatesShareALayer) {
    EXPECT_EQ(schedule_asap(wires(4, {Gate::cnot(0, 1), Gate::cnot(2, 3)})).depth(), 1u);
}

TEST(Schedule, SharedQubitForcesOrder) {
    EXPECT_EQ(schedule_asap(wires(3, {Gate::cnot(0, 1), Gate::cnot(1, 2)})).depth(), 2u);
}

TEST(Schedule, XGatesDoNotAddDepth) {
    const Circuit c = wires(2, {Gate::x(0), Gate::cnot(0, 1), Gate::x(0), Gate::x(1), Gate::h(1)});
    EXPECT_EQ(schedule_asap(c).depth(), 2u);
    std::size_t placed = 0;
    for (const auto& l : schedule_asap(c).layers) placed += l.gates.size();
    EXPECT_EQ(placed, c.gates().size());
}

TEST(Counts, EmptyCircuitIsAllZeros) {
    EXPECT_EQ(count_resources(Circuit()), ResourceCounts{});
}

TEST(Counts, TalliesAndTLayers) {
    const Circuit c = wires(3, {Gate::h(0), Gate::t(0), Gate::tdg(1), Gate::cnot(0, 1), Gate::t(2), Gate::swap(1, 2),
                                Gate::x(0), Gate::s(0)});
    const auto r = count_resources(c);
    EXPECT_EQ(r.qubits, 3);
    EXPECT_EQ(r.t_count, 3);
    EXPECT_EQ(r.t_depth, 2);  // tdg(1) and t(2) share the first layer
    EXPECT_EQ(r.h_count, 1);
    EXPECT_EQ(r.cnot_count, 4);  // SWAP = 3 CNOTs
    EXPECT_EQ(r.depth, 4);
    EXPECT_DOUBLE_EQ(r.t_width(), 1.5);
}

TEST(Counts, RejectsUnloweredGates) {
    EXPECT_THAT([] { count_resources(wires(3, {Gate::toffoli(0, 1, 2)})); },
                ThrowsMessage<Error>(HasSubstr("not lowered")));
    const auto t = tally_gates(wires(5, {Gate::toffoli(0, 1, 2), Gate::mpmct({0, 1, 3}, {true, false, true}, 4)}));
    EXPECT_EQ(t.toffoli, 1);
    EXPECT_EQ(t.mpmct, 1);
    EXPECT_EQ(t.depth, 2);
}

TEST(TextIo, ParsesGateLines) {
    const Circuit c = parse_circuit(
        ".qubits 9\n"
        "# comment\n"
        "tof 1 2 5\n"
        "mpmct ++-+ 0 1 2 3 -> 8\n");
    ASSERT_EQ(c.gates().size(), 2u);
    EXPECT_EQ(c.gates()[0], Gate::toffoli(1, 2, 5));
    EXPECT_EQ(c.gates()[1], Gate::mpmct({0, 1, 2, 3}, {true, true, false, true}, 8));
}

TEST(TextIo, ReportsLineNumbers) {
    EXPECT_THAT([] { parse_circuit(".qubits 3\ncnot 1 1\n"); },
                ThrowsMessage<Error>(testing::AllOf(HasSubstr("line 2"), HasSubstr("duplicate operand"))));
    EXPECT_THAT([] { parse_circuit(".qubits 3\nfoo 1\n"); }, ThrowsMessage<Error>(HasSubstr("line 2")));
    EXPECT_THAT([] { parse_circuit("x 0\n"); }, ThrowsMessage<Error>(HasSubstr("missing .qubits")));
}

TEST(TextIo, RoundTrip) {
    const Circuit c(6,
                    {{"address", RegisterRole::Address, 0, 2},
                     {"output", RegisterRole::Output, 2, 1},
                     {"parity", RegisterRole::ParityRegister, 3, 1},
                     {"anc", RegisterRole::Ancilla, 4, 2}},
                    {Gate::x(0), Gate::h(1), Gate::s(2), Gate::sdg(3), Gate::t(4), Gate::tdg(5), Gate::cnot(0, 1),
                     Gate::swap(2, 3), Gate::toffoli(0, 1, 2), Gate::mpmct({0, 1, 3}, {false, true, false}, 5)});
    const Circuit back = parse_circuit(write_circuit(c));
    EXPECT_EQ(back, c);
    EXPECT_EQ(write_circuit(back), write_circuit(c));
}
