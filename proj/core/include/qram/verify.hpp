#pragma once

#include <complex>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "qram/decomp.hpp"
#include "qram/families.hpp"
#include "qram/ir.hpp"

namespace qram {

inline constexpr int kMaxStateQubits = 20;

// Dense state over m qubits; qubit 0 is the most significant index bit.
struct StateVector {
    int qubits = 0;
    std::vector<std::complex<double>> amps;

    static StateVector basis(int qubits, std::uint64_t index);
    double norm() const;
    std::uint64_t bit(int qubit) const { return std::uint64_t{1} << (qubits - 1 - qubit); }
};

// bits[q] is the value of qubit q. Throws "non-classical gate" on H/S/T.
std::vector<bool> simulate_classical(const Circuit& circuit, std::vector<bool> bits);
StateVector simulate_state(const Circuit& circuit, StateVector state);
void apply_gate(StateVector& state, const Gate& gate);

// Gate-reversed copy with S/T swapped for their adjoints.
Circuit inverse(const Circuit& circuit);

struct QueryFailure {
    std::uint64_t address = 0;
    std::string detail;
};

struct QueryReport {
    int n = 0;
    std::int64_t checked = 0;
    std::vector<QueryFailure> failures;

    bool ok() const { return failures.empty(); }
};

// Runs every address from a zeroed work state. The output must equal the
// memory bit; every other register must return to its initial value, except
// a parity register, which only has to end with even weight.
QueryReport check_query_semantics(const Circuit& circuit, const MemorySpec& mem);
QueryReport check_query_semantics(const FamilyConfig& config, const MemorySpec& mem);

// Planted fault for self-tests: the first control of a controlled gate is
// negated, an X is dropped.
Circuit mutate_gate(const Circuit& circuit, std::size_t index);
// Index of the first TOFFOLI or MPMCT, the default mutation site.
std::size_t default_mutation_site(const Circuit& circuit);

// Prepares an equal superposition of the given addresses, runs the circuit
// and returns the largest amplitude deviation from sum_x |x>|b_x> with all
// work registers back at zero.
double superposition_query_error(const Circuit& circuit, const MemorySpec& mem,
                                 const std::vector<std::uint64_t>& addresses);

struct DecompositionSpec {
    GateKind kind = GateKind::TOFFOLI;  // TOFFOLI or MPMCT
    ToffoliVariant variant = ToffoliVariant::TD1;
    std::vector<bool> polarity;  // MPMCT controls
};

// Max entrywise deviation between the lowered fragment and the ideal gate on
// the subspace where every ancilla starts at |0>, minimized over global
// phase. Outputs with a dirty ancilla count as deviation.
double check_decomposition_unitary(const DecompositionSpec& spec);

enum class CheckRule { Exact, AtMost, Within, Info };

struct MetricCheck {
    std::string metric;
    std::int64_t formula = 0;
    std::int64_t builder = 0;
    CheckRule rule = CheckRule::Exact;
    bool ok = true;
};

std::vector<MetricCheck> check_formula_vs_builder(const FamilyConfig& config);

}  // namespace qram
