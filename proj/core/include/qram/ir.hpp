#pragma once

#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace qram {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

enum class GateKind { X, H, S, Sdg, T, Tdg, CNOT, SWAP, TOFFOLI, MPMCT };

std::string_view gate_name(GateKind kind);
bool is_t_gate(GateKind kind);

// Operands are stored controls-first with the target last. Single-qubit
// gates carry one operand, SWAP carries its two qubits.
struct Gate {
    GateKind kind = GateKind::X;
    std::vector<int> qubits;
    std::vector<bool> polarity;  // MPMCT only, true = positive control

    static Gate x(int q) { return {GateKind::X, {q}, {}}; }
    static Gate h(int q) { return {GateKind::H, {q}, {}}; }
    static Gate s(int q) { return {GateKind::S, {q}, {}}; }
    static Gate sdg(int q) { return {GateKind::Sdg, {q}, {}}; }
    static Gate t(int q) { return {GateKind::T, {q}, {}}; }
    static Gate tdg(int q) { return {GateKind::Tdg, {q}, {}}; }
    static Gate cnot(int c, int t) { return {GateKind::CNOT, {c, t}, {}}; }
    static Gate swap(int a, int b) { return {GateKind::SWAP, {a, b}, {}}; }
    static Gate toffoli(int c1, int c2, int t) { return {GateKind::TOFFOLI, {c1, c2, t}, {}}; }
    static Gate mpmct(std::vector<int> controls, std::vector<bool> polarity, int target);

    int target() const { return qubits.back(); }
    std::span<const int> controls() const;

    // Throws Error when operand count, distinctness or polarity rules fail.
    void validate() const;

    bool operator==(const Gate&) const = default;
};

enum class RegisterRole { Address, Ancilla, Output, ParityRegister, Memory, Trigger, Copy };

std::string_view role_name(RegisterRole role);
RegisterRole parse_role(std::string_view name);

struct Register {
    std::string name;
    RegisterRole role = RegisterRole::Ancilla;
    int first = 0;
    int size = 0;

    int last() const { return first + size - 1; }
    int operator[](int i) const { return first + i; }
    bool operator==(const Register&) const = default;
};

class Circuit {
public:
    Circuit() = default;
    // Registers must partition [0, num_qubits); every gate is validated.
    Circuit(int num_qubits, std::vector<Register> registers, std::vector<Gate> gates);

    // One register named "q" covering every qubit.
    static Circuit unannotated(int num_qubits, std::vector<Gate> gates);

    int num_qubits() const { return num_qubits_; }
    const std::vector<Register>& registers() const { return registers_; }
    const std::vector<Gate>& gates() const { return gates_; }
    const Register& reg(std::string_view name) const;
    const Register* find_register(std::string_view name) const;

    bool operator==(const Circuit&) const = default;

private:
    int num_qubits_ = 0;
    std::vector<Register> registers_;
    std::vector<Gate> gates_;
};

// Layer entries index into the scheduled circuit's gate list.
struct Layer {
    std::vector<std::size_t> gates;
    bool x_only = false;
};

struct LayeredCircuit {
    std::vector<Layer> layers;

    std::size_t depth() const;  // layers that are not X-only
};

LayeredCircuit schedule_asap(const Circuit& circuit);

struct ResourceCounts {
    std::int64_t qubits = 0;
    std::int64_t depth = 0;
    std::int64_t t_count = 0;
    std::int64_t t_depth = 0;
    std::int64_t h_count = 0;
    std::int64_t cnot_count = 0;

    double t_width() const;  // T_c / T_d, zero when T_d is zero
    bool operator==(const ResourceCounts&) const = default;
};

// Clifford+T metrics; throws "not lowered" if TOFFOLI or MPMCT remain.
ResourceCounts count_resources(const Circuit& circuit);

// Pre-lowering view: TOFFOLI and MPMCT treated as opaque one-layer gates.
struct GateTally {
    std::int64_t qubits = 0;
    std::int64_t depth = 0;
    std::int64_t x = 0, h = 0, s = 0, sdg = 0, t = 0, tdg = 0;
    std::int64_t cnot = 0, swap = 0, toffoli = 0, mpmct = 0;
};

GateTally tally_gates(const Circuit& circuit);

std::string write_circuit(const Circuit& circuit);
Circuit parse_circuit(std::string_view text);

}  // namespace qram
