#include "qram/ir.hpp"

#include <algorithm>
#include <array>
#include <unordered_set>

namespace qram {

namespace {

constexpr std::array<std::string_view, 10> kGateNames = {
    "x", "h", "s", "sdg", "t", "tdg", "cnot", "swap", "tof", "mpmct"};

constexpr std::array<std::string_view, 7> kRoleNames = {
    "address", "ancilla", "output", "parity-register", "memory", "trigger", "copy"};

std::size_t expected_arity(GateKind kind) {
    switch (kind) {
        case GateKind::CNOT:
        case GateKind::SWAP: return 2;
        case GateKind::TOFFOLI: return 3;
        case GateKind::MPMCT: return 0;
        default: return 1;
    }
}

}  // namespace

std::string_view gate_name(GateKind kind) { return kGateNames[static_cast<std::size_t>(kind)]; }

bool is_t_gate(GateKind kind) { return kind == GateKind::T || kind == GateKind::Tdg; }

Gate Gate::mpmct(std::vector<int> controls, std::vector<bool> polarity, int target) {
    controls.push_back(target);
    return {GateKind::MPMCT, std::move(controls), std::move(polarity)};
}

std::span<const int> Gate::controls() const {
    if (qubits.empty()) return {};
    return std::span<const int>(qubits.data(), qubits.size() - 1);
}

void Gate::validate() const {
    const std::size_t arity = expected_arity(kind);
    if (kind == GateKind::MPMCT) {
        if (qubits.size() < 3) throw Error("MPMCT requires at least 2 controls");
        if (polarity.size() != qubits.size() - 1)
            throw Error("polarity length " + std::to_string(polarity.size()) +
                        " does not match control count " + std::to_string(qubits.size() - 1));
    } else {
        if (qubits.size() != arity)
            throw Error(std::string(gate_name(kind)) + " expects " + std::to_string(arity) +
                        " operands");
        if (!polarity.empty()) throw Error("polarity given for non-MPMCT gate");
    }
    for (std::size_t i = 0; i < qubits.size(); ++i) {
        if (qubits[i] < 0) throw Error("negative qubit index");
        for (std::size_t j = i + 1; j < qubits.size(); ++j)
            if (qubits[i] == qubits[j]) throw Error("duplicate operand");
    }
}

std::string_view role_name(RegisterRole role) { return kRoleNames[static_cast<std::size_t>(role)]; }

RegisterRole parse_role(std::string_view name) {
    for (std::size_t i = 0; i < kRoleNames.size(); ++i)
        if (kRoleNames[i] == name) return static_cast<RegisterRole>(i);
    throw Error("unknown register role '" + std::string(name) + "'");
}

Circuit::Circuit(int num_qubits, std::vector<Register> registers, std::vector<Gate> gates)
    : num_qubits_(num_qubits), registers_(std::move(registers)), gates_(std::move(gates)) {
    if (num_qubits_ < 0) throw Error("negative qubit count");
    std::vector<char> covered(static_cast<std::size_t>(num_qubits_), 0);
    std::unordered_set<std::string> names;
    for (const auto& r : registers_) {
        if (r.size <= 0) throw Error("register '" + r.name + "' is empty");
        if (r.first < 0 || r.last() >= num_qubits_)
            throw Error("register '" + r.name + "' exceeds qubit count");
        if (!names.insert(r.name).second) throw Error("duplicate register '" + r.name + "'");
        for (int q = r.first; q <= r.last(); ++q) {
            if (covered[q]) throw Error("qubit " + std::to_string(q) + " in two registers");
            covered[q] = 1;
        }
    }
    for (int q = 0; q < num_qubits_; ++q)
        if (!covered[q]) throw Error("qubit " + std::to_string(q) + " not in any register");
    for (const auto& g : gates_) {
        g.validate();
        for (int q : g.qubits)
            if (q >= num_qubits_)
                throw Error("qubit index " + std::to_string(q) + " out of range");
    }
}

Circuit Circuit::unannotated(int num_qubits, std::vector<Gate> gates) {
    std::vector<Register> regs;
    if (num_qubits > 0) regs.push_back({"q", RegisterRole::Ancilla, 0, num_qubits});
    return Circuit(num_qubits, std::move(regs), std::move(gates));
}

const Register* Circuit::find_register(std::string_view name) const {
    auto it = std::find_if(registers_.begin(), registers_.end(),
                           [&](const Register& r) { return r.name == name; });
    return it == registers_.end() ? nullptr : &*it;
}

const Register& Circuit::reg(std::string_view name) const {
    if (const auto* r = find_register(name)) return *r;
    throw Error("no register named '" + std::string(name) + "'");
}

}  // namespace qram
