#pragma once

#include <span>
#include <string_view>
#include <vector>

#include "qram/ir.hpp"

namespace qram {

enum class ToffoliVariant { TD3, TD2, TD1 };

std::string_view variant_name(ToffoliVariant v);
ToffoliVariant parse_variant(std::string_view name);
int toffoli_ancillas(ToffoliVariant v);

// Clifford+T Toffoli on (c1, c2 -> target). Ancillae must be |0> on entry
// and are returned to |0>.
std::vector<Gate> decompose_toffoli(ToffoliVariant variant, int c1, int c2, int target,
                                    std::span<const int> ancillas = {});

// Fragment over local slots: controls 0..c-1, target c, ancillae c+1..2c-1
// (the last one must be clean, the others may hold anything). No polarity
// wrappers. Cached per c and safe to call concurrently.
//
// Templates keep each T run as consecutive gates and carry no alignment
// pads; decompose_* return them with pads for a fresh start, and lowering
// passes pad against the actual frontiers instead.
const std::vector<Gate>& mpmct_template(int controls);
const std::vector<Gate>& toffoli_template(ToffoliVariant variant);

int mpmct_ancillas(int controls);

// Lowers one MPMCT, wrapping negative controls in X gates.
std::vector<Gate> decompose_mpmct(const Gate& gate, std::span<const int> ancillas);

// Replaces every TOFFOLI and MPMCT. Ancillae are drawn from ancilla-role
// registers; each gate takes the ones that became free earliest, so gates
// that run one after another share a single pool.
Circuit lower_to_clifford_t(const Circuit& circuit, ToffoliVariant variant = ToffoliVariant::TD1);

}  // namespace qram
