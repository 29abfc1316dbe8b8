#include <algorithm>
#include <numeric>

#include "qram/decomp.hpp"
#include "synth.hpp"

namespace qram {

Circuit lower_to_clifford_t(const Circuit& circuit, ToffoliVariant variant) {
    std::vector<int> pool;
    for (const auto& r : circuit.registers())
        if (r.role == RegisterRole::Ancilla)
            for (int i = 0; i < r.size; ++i) pool.push_back(r[i]);

    detail::TAligner out(static_cast<std::size_t>(circuit.num_qubits()));
    auto take = [&](const Gate& g, std::size_t need) {
        std::vector<int> free;
        for (int q : pool)
            if (std::find(g.qubits.begin(), g.qubits.end(), q) == g.qubits.end()) free.push_back(q);
        if (free.size() < need)
            throw Error("insufficient ancillae: need " + std::to_string(need) + ", have " +
                        std::to_string(free.size()));
        std::stable_sort(free.begin(), free.end(),
                         [&](int a, int b) { return out.frontier(a) < out.frontier(b); });
        free.resize(need);
        return free;
    };

    for (const auto& g : circuit.gates()) {
        if (g.kind == GateKind::TOFFOLI) {
            auto anc = take(g, static_cast<std::size_t>(toffoli_ancillas(variant)));
            for (auto& h : detail::toffoli_fragment(variant, g.qubits[0], g.qubits[1], g.qubits[2], anc))
                out.push(std::move(h));
        } else if (g.kind == GateKind::MPMCT) {
            const int c = static_cast<int>(g.controls().size());
            if (c < 4) throw Error("MPMCT decomposition requires ≥ 4 controls");
            auto anc = take(g, static_cast<std::size_t>(mpmct_ancillas(c)));
            for (auto& h : detail::mpmct_fragment(g, anc)) out.push(std::move(h));
        } else {
            out.push(g);
        }
    }
    return Circuit(circuit.num_qubits(), circuit.registers(), out.finish());
}

}  // namespace qram
