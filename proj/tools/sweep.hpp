#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "qram/families.hpp"
#include "qram/ftcost.hpp"

namespace qram::cli {

enum class Source { Auto, Formula, Builder };
Source parse_source(std::string_view name);

struct Row {
    FamilyConfig config;
    ResourceCounts counts;
    bool bound_model = false;  // SelectSwap: qubits, T_c, T_d only
    std::optional<PhysicalEstimate> estimate;
};

// Auto takes the closed form where one exists and the count-only builder
// otherwise. A memory, when given, is used by builder paths.
ResourceCounts evaluate_counts(const FamilyConfig& config, Source source, const MemorySpec* mem = nullptr);
Row evaluate(const FamilyConfig& config, Source source, const SurfaceCodeParams& params,
             bool with_estimate, const MemorySpec* mem = nullptr);

std::string_view csv_header();
std::string csv_row(const Row& row);

// "7", "15..36", "30,35" or a mix such as "4,6..8".
std::vector<int> parse_int_list(std::string_view text);

enum class QMode { HalfFull, Range, List };
enum class KMode { All, List };

struct SweepSpec {
    std::vector<Family> families;
    std::vector<int> ns;
    QMode q_mode = QMode::HalfFull;
    std::vector<int> qs;
    KMode k_mode = KMode::All;
    std::vector<int> ks;
    std::vector<std::int64_t> lambdas;  // empty: T-count optimal lambda
    std::int64_t b = 1;
    ToffoliVariant variant = ToffoliVariant::TD1;
    Source source = Source::Auto;
    SurfaceCodeParams params;
    int threads = 0;  // 0: hardware concurrency
};

// Valid configurations in (family name, n, q, k, lambda) order.
std::vector<FamilyConfig> expand_sweep(const SweepSpec& spec, int* skipped = nullptr);
// Evaluates on a worker pool; rows come back in expand_sweep order.
std::vector<Row> run_sweep(const SweepSpec& spec, const std::vector<FamilyConfig>& configs);

}  // namespace qram::cli
