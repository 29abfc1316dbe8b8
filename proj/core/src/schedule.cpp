#include <algorithm>
#include <numeric>

#include "qram/ir.hpp"

namespace qram {

namespace {

// Slot of a gate in the ASAP order. Non-X gates sit in integer layer
// `layer` with sub = 0. X gates never advance a qubit's frontier: they are
// parked between layer `layer` and `layer + 1` in X-only sublayer `sub` >= 1.
struct Slot {
    std::int64_t layer = 0;
    std::int64_t sub = 0;
    auto operator<=>(const Slot&) const = default;
};

std::vector<Slot> assign_slots(const Circuit& c) {
    const auto n = static_cast<std::size_t>(c.num_qubits());
    std::vector<std::int64_t> frontier(n, 0);
    std::vector<std::int64_t> x_slot(n, -1);
    std::vector<std::int64_t> x_count(n, 0);
    std::vector<Slot> slots;
    slots.reserve(c.gates().size());
    for (const auto& g : c.gates()) {
        if (g.kind == GateKind::X) {
            const int q = g.qubits[0];
            if (x_slot[q] != frontier[q]) {
                x_slot[q] = frontier[q];
                x_count[q] = 0;
            }
            slots.push_back({frontier[q], ++x_count[q]});
            continue;
        }
        std::int64_t layer = 0;
        for (int q : g.qubits) layer = std::max(layer, frontier[q]);
        ++layer;
        for (int q : g.qubits) frontier[q] = layer;
        slots.push_back({layer, 0});
    }
    return slots;
}

}  // namespace

std::size_t LayeredCircuit::depth() const {
    return static_cast<std::size_t>(
        std::count_if(layers.begin(), layers.end(), [](const Layer& l) { return !l.x_only; }));
}

LayeredCircuit schedule_asap(const Circuit& circuit) {
    const auto slots = assign_slots(circuit);
    std::vector<std::size_t> order(slots.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return slots[a] < slots[b]; });
    LayeredCircuit out;
    for (std::size_t i = 0; i < order.size(); ++i) {
        const auto& s = slots[order[i]];
        if (i == 0 || slots[order[i - 1]] != s) out.layers.push_back({{}, s.sub != 0});
        out.layers.back().gates.push_back(order[i]);
    }
    return out;
}

ResourceCounts count_resources(const Circuit& circuit) {
    ResourceCounts rc;
    rc.qubits = circuit.num_qubits();
    for (const auto& g : circuit.gates()) {
        switch (g.kind) {
            case GateKind::TOFFOLI:
            case GateKind::MPMCT: throw Error("not lowered: circuit still contains " +
                                              std::string(gate_name(g.kind)) + " gates");
            case GateKind::T:
            case GateKind::Tdg: ++rc.t_count; break;
            case GateKind::H: ++rc.h_count; break;
            case GateKind::CNOT: ++rc.cnot_count; break;
            case GateKind::SWAP: rc.cnot_count += 3; break;
            default: break;
        }
    }
    const auto slots = assign_slots(circuit);
    std::vector<std::int64_t> t_layers;
    for (std::size_t i = 0; i < slots.size(); ++i) {
        if (slots[i].sub != 0) continue;
        rc.depth = std::max(rc.depth, slots[i].layer);
        if (is_t_gate(circuit.gates()[i].kind)) t_layers.push_back(slots[i].layer);
    }
    std::sort(t_layers.begin(), t_layers.end());
    rc.t_depth = std::unique(t_layers.begin(), t_layers.end()) - t_layers.begin();
    return rc;
}

GateTally tally_gates(const Circuit& circuit) {
    GateTally t;
    t.qubits = circuit.num_qubits();
    for (const auto& g : circuit.gates()) {
        switch (g.kind) {
            case GateKind::X: ++t.x; break;
            case GateKind::H: ++t.h; break;
            case GateKind::S: ++t.s; break;
            case GateKind::Sdg: ++t.sdg; break;
            case GateKind::T: ++t.t; break;
            case GateKind::Tdg: ++t.tdg; break;
            case GateKind::CNOT: ++t.cnot; break;
            case GateKind::SWAP: ++t.swap; break;
            case GateKind::TOFFOLI: ++t.toffoli; break;
            case GateKind::MPMCT: ++t.mpmct; break;
        }
    }
    for (const auto& s : assign_slots(circuit))
        if (s.sub == 0) t.depth = std::max(t.depth, s.layer);
    return t;
}

double ResourceCounts::t_width() const {
    return t_depth == 0 ? 0.0 : static_cast<double>(t_count) / static_cast<double>(t_depth);
}

}  // namespace qram
