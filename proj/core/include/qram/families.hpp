#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "qram/decomp.hpp"
#include "qram/ir.hpp"
#include "qram/program.hpp"

namespace qram {

enum class Family {
    BBSerial,
    BBParallel,
    LargeDepth,
    LargeWidth,
    Hybrid,
    HybridT1Parallel,
    HybridT2Parallel,
    HybridParallel,
    SelectSwapClean,
    SelectSwapDirty,
};

std::string_view family_name(Family f);
Family parse_family(std::string_view name);
const std::vector<Family>& all_families();
bool is_selectswap(Family f);
bool is_hybrid(Family f);
bool uses_mpmct(Family f);

// Addresses are n-bit integers; x1 is the most significant bit.
struct MemorySpec {
    int n = 0;
    std::vector<std::uint64_t> ones;  // sorted, distinct

    // log2 |ones|; throws unless |ones| is a power of two.
    int q() const;
    bool contains(std::uint64_t address) const;
};

// Validates and sorts. exact_power additionally requires |ones| = 2^q.
MemorySpec make_memory(int n, std::vector<std::uint64_t> ones, bool exact_power = true);
MemorySpec random_memory(int n, int q, std::uint64_t seed);
// One k-bit prefix owns min(2^(n-k), 2^(q-1) + 1) addresses; the rest are
// spread as evenly as possible over the other prefixes.
MemorySpec worst_case_memory(int n, int q, int k, std::uint64_t seed);
MemorySpec complement(const MemorySpec& mem);

std::string format_address(std::uint64_t address, int n);
MemorySpec parse_memory(std::string_view text, bool exact_power = true);
std::string write_memory(const MemorySpec& mem);

struct FamilyConfig {
    Family family = Family::LargeDepth;
    int n = 0;
    int q = -1;            // required for formulas and count-only builds
    int k = -1;            // hybrids
    std::int64_t lambda = -1;  // SelectSwap
    std::int64_t b = 1;        // SelectSwap word size
    ToffoliVariant variant = ToffoliVariant::TD1;
    bool prepare_parity = false;  // emit even-parity preparation and teardown
    bool relaxed = false;         // allow small MPMCTs that stay unlowered
    bool complement = false;      // large-depth: match the 0-cells, then flip
};

// Parameter checks shared by formulas and builders.
void validate(const FamilyConfig& config);

Program build_program(const FamilyConfig& config, const MemorySpec& mem);
Circuit build_circuit(const FamilyConfig& config, const MemorySpec& mem, bool lower = false);

// Lowered counts of the explicit construction, evaluated without
// materializing the circuit. Without a memory, hybrids use the worst-case
// tiering profile; the other families do not depend on memory contents.
ResourceCounts builder_counts(const FamilyConfig& config, const MemorySpec& mem);
ResourceCounts builder_counts(const FamilyConfig& config);
Program build_program(const FamilyConfig& config);

// Closed forms. SelectSwap results fill qubits, t_count and t_depth only.
ResourceCounts formula_counts(const FamilyConfig& config);
bool has_closed_form(const FamilyConfig& config);

enum class SelectSwapMode { Clean, Dirty };

struct SelectSwapBounds {
    ResourceCounts counts;      // qubits, t_count, t_depth
    bool asymptotic_model = true;
};

SelectSwapBounds selectswap_bounds(std::int64_t N, std::int64_t b, std::int64_t lambda,
                                   SelectSwapMode mode);

// Smallest lambda minimizing the T-count bound.
std::pair<std::int64_t, std::int64_t> optimal_lambda(std::int64_t N, std::int64_t b,
                                                     SelectSwapMode mode);

// k minimizing N_Q * T_d of the fully parallel hybrid, from builder counts.
int optimal_k(int n, int q);
std::vector<std::pair<int, ResourceCounts>> hybrid_parallel_scan(int n, int q);

// Largest q whose large-depth rough cost stays below bb-parallel's; -1 if none.
int find_crossover_q(int n);

}  // namespace qram
