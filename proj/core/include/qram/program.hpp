#pragma once

// Structured circuit descriptions. A Program is a list of parallel gate
// blocks and sequential loops over named registers. It can be expanded into
// a concrete Circuit, or counted directly: the counter replays the ASAP
// schedule on piecewise-affine per-register frontiers, so counts for circuits
// with billions of gates come out exactly without materializing them.

#include <cstdint>
#include <functional>
#include <string>
#include <variant>
#include <vector>

#include "qram/decomp.hpp"
#include "qram/ir.hpp"

namespace qram {

struct RegisterDecl {
    std::string name;
    RegisterRole role = RegisterRole::Ancilla;
    std::int64_t size = 0;
};

// Inside a loop, iteration j in [j_lo, j_hi) adds offset + (j - j_lo) / width.
struct Stair {
    std::int64_t j_lo = 0;
    std::int64_t j_hi = 0;
    std::int64_t offset = 0;
    std::int64_t width = 1;
};

// Element `base + i` of register `reg` for parallel instance i, plus the
// stair offset for loop iteration j. Operands without stairs are fixed
// across iterations.
struct Operand {
    int reg = 0;
    std::int64_t base = 0;
    std::vector<Stair> stairs;

    std::int64_t at(std::int64_t i, std::int64_t j) const;
};

struct Block {
    GateKind kind = GateKind::X;
    std::vector<Operand> qubits;    // controls first, target last
    std::vector<Operand> ancillas;  // consumed when TOFFOLI/MPMCT are lowered
    std::int64_t count = 1;         // parallel instances; must be 1 inside loops
    // MPMCT polarity per instance (or per iteration inside a loop); empty
    // means all positive.
    std::function<std::vector<bool>(std::int64_t)> polarity;
    // X blocks only: instance filter, empty means every instance.
    std::function<bool(std::int64_t)> when;
};

struct Loop {
    std::int64_t iterations = 0;
    std::vector<Block> body;
};

struct Program {
    std::vector<RegisterDecl> registers;
    std::vector<std::variant<Block, Loop>> ops;
    ToffoliVariant variant = ToffoliVariant::TD1;

    int add_register(std::string name, RegisterRole role, std::int64_t size);
    std::int64_t qubits() const;
    std::int64_t offset(int reg) const;
};

// Pre-lowering gate numbers, multiplied out over instances and iterations.
struct BlockTally {
    std::int64_t cnot = 0, toffoli = 0, mpmct = 0, x = 0, h = 0;
};

BlockTally tally_program(const Program& p);

Circuit materialize(const Program& p, bool lower);

// Lowered Clifford+T counts, identical to count_resources(materialize(p, true)).
ResourceCounts count_program(const Program& p);

}  // namespace qram
