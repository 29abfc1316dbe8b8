#include <cmath>
#include <numbers>

#include "qram/verify.hpp"

namespace qram {

namespace {

using cd = std::complex<double>;

void check_size(int qubits) {
    if (qubits < 0) throw Error("negative qubit count");
    if (qubits > kMaxStateQubits)
        throw Error("state too large: " + std::to_string(qubits) + " qubits exceeds " +
                    std::to_string(kMaxStateQubits));
}

// Controls that must hold for the gate to fire, as (mask, pattern).
std::pair<std::uint64_t, std::uint64_t> control_pattern(const StateVector& s, const Gate& g) {
    std::uint64_t mask = 0, pattern = 0;
    const auto ctl = g.controls();
    for (std::size_t i = 0; i < ctl.size(); ++i) {
        const std::uint64_t b = s.bit(ctl[i]);
        mask |= b;
        if (g.kind != GateKind::MPMCT || g.polarity[i]) pattern |= b;
    }
    return {mask, pattern};
}

void phase(StateVector& s, int q, cd factor) {
    const std::uint64_t b = s.bit(q);
    for (std::uint64_t i = 0; i < s.amps.size(); ++i)
        if (i & b) s.amps[i] *= factor;
}

}  // namespace

StateVector StateVector::basis(int qubits, std::uint64_t index) {
    check_size(qubits);
    StateVector s;
    s.qubits = qubits;
    s.amps.assign(std::size_t{1} << qubits, 0.0);
    if (index >= s.amps.size()) throw Error("basis index out of range");
    s.amps[index] = 1.0;
    return s;
}

double StateVector::norm() const {
    double sum = 0;
    for (const auto& a : amps) sum += std::norm(a);
    return std::sqrt(sum);
}

std::vector<bool> simulate_classical(const Circuit& circuit, std::vector<bool> bits) {
    if (bits.size() != static_cast<std::size_t>(circuit.num_qubits()))
        throw Error("input has " + std::to_string(bits.size()) + " bits, circuit has " +
                    std::to_string(circuit.num_qubits()) + " qubits");
    std::vector<char> v(bits.begin(), bits.end());
    for (const auto& g : circuit.gates()) {
        const auto& q = g.qubits;
        switch (g.kind) {
            case GateKind::X: v[q[0]] ^= 1; break;
            case GateKind::CNOT: v[q[1]] ^= v[q[0]]; break;
            case GateKind::SWAP: std::swap(v[q[0]], v[q[1]]); break;
            case GateKind::TOFFOLI: v[q[2]] ^= v[q[0]] & v[q[1]]; break;
            case GateKind::MPMCT: {
                bool fire = true;
                for (std::size_t i = 0; fire && i + 1 < q.size(); ++i)
                    fire = (v[q[i]] != 0) == g.polarity[i];
                if (fire) v[q.back()] ^= 1;
                break;
            }
            default:
                throw Error("non-classical gate " + std::string(gate_name(g.kind)) +
                            " in classical simulation");
        }
    }
    return {v.begin(), v.end()};
}

void apply_gate(StateVector& s, const Gate& g) {
    for (int q : g.qubits)
        if (q >= s.qubits) throw Error("gate touches qubit " + std::to_string(q) + " outside the state");
    const auto dim = s.amps.size();
    auto& a = s.amps;
    switch (g.kind) {
        case GateKind::H: {
            const std::uint64_t b = s.bit(g.qubits[0]);
            const double r = std::numbers::sqrt2 / 2;
            for (std::uint64_t i = 0; i < dim; ++i) {
                if (i & b) continue;
                const cd x = a[i], y = a[i | b];
                a[i] = r * (x + y);
                a[i | b] = r * (x - y);
            }
            return;
        }
        case GateKind::S: return phase(s, g.qubits[0], {0, 1});
        case GateKind::Sdg: return phase(s, g.qubits[0], {0, -1});
        case GateKind::T: return phase(s, g.qubits[0], std::polar(1.0, std::numbers::pi / 4));
        case GateKind::Tdg: return phase(s, g.qubits[0], std::polar(1.0, -std::numbers::pi / 4));
        case GateKind::SWAP: {
            const std::uint64_t b0 = s.bit(g.qubits[0]), b1 = s.bit(g.qubits[1]);
            for (std::uint64_t i = 0; i < dim; ++i)
                if ((i & b0) && !(i & b1)) std::swap(a[i], a[(i ^ b0) | b1]);
            return;
        }
        default: {
            const auto [mask, pattern] = control_pattern(s, g);
            const std::uint64_t t = s.bit(g.target());
            for (std::uint64_t i = 0; i < dim; ++i)
                if (!(i & t) && (i & mask) == pattern) std::swap(a[i], a[i | t]);
            return;
        }
    }
}

StateVector simulate_state(const Circuit& circuit, StateVector state) {
    check_size(circuit.num_qubits());
    if (state.qubits != circuit.num_qubits() || state.amps.size() != (std::size_t{1} << state.qubits))
        throw Error("state does not match the circuit width");
    for (const auto& g : circuit.gates()) apply_gate(state, g);
    return state;
}

Circuit inverse(const Circuit& circuit) {
    std::vector<Gate> gates(circuit.gates().rbegin(), circuit.gates().rend());
    for (auto& g : gates) {
        switch (g.kind) {
            case GateKind::S: g.kind = GateKind::Sdg; break;
            case GateKind::Sdg: g.kind = GateKind::S; break;
            case GateKind::T: g.kind = GateKind::Tdg; break;
            case GateKind::Tdg: g.kind = GateKind::T; break;
            default: break;
        }
    }
    return Circuit(circuit.num_qubits(), circuit.registers(), std::move(gates));
}

}  // namespace qram
