#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <utility>
#include <vector>

#include "qram/decomp.hpp"

namespace qram::detail {

using CnotLayer = std::vector<std::pair<int, int>>;

// Each wire holds a parity over at most three variables (bit mask < 8).
using ParityState = std::vector<std::uint8_t>;

// Breadth-first search over layers of disjoint CNOTs on up to four wires.
// Returns the shallowest network reaching a state accepted by `goal`,
// fewest CNOTs among equally shallow ones.
std::vector<CnotLayer> cnot_search(const ParityState& start,
                                   const std::function<bool(const ParityState&)>& goal);

void apply_layers(ParityState& state, const std::vector<CnotLayer>& layers);

// Replays gates under ASAP frontiers. Under ASAP a T gate on a wire that
// went idle early drifts into an earlier layer than the rest of its run, so
// each run of consecutive T/Tdg gates on distinct wires is pinned to its
// latest layer by S/Sdg pads in the drifting wires' idle layers.
class TAligner {
public:
    explicit TAligner(std::size_t wires) : frontier_(wires, 0) {}

    void push(Gate g);
    std::int64_t frontier(int q);
    std::vector<Gate> finish();

private:
    void place(Gate g);
    void flush();

    std::vector<std::int64_t> frontier_;
    std::vector<Gate> run_, out_;
};

// Unaligned fragments on real qubits, for passes that align in context.
std::vector<Gate> toffoli_fragment(ToffoliVariant variant, int c1, int c2, int target,
                                   std::span<const int> ancillas);
std::vector<Gate> mpmct_fragment(const Gate& gate, std::span<const int> ancillas);

}  // namespace qram::detail
