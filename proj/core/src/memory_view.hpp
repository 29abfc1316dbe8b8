#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "qram/families.hpp"

namespace qram::detail {

// Prefix groups of a memory, ranked by (size descending, prefix ascending).
// Consecutive ranks of equal size form one class.
struct TierClass {
    std::int64_t size = 0;
    std::int64_t count = 0;
};

struct TierProfile {
    std::vector<TierClass> classes;
    std::function<std::uint64_t(std::int64_t)> prefix;                // rank -> prefix
    std::function<std::uint64_t(std::int64_t, std::int64_t)> suffix;  // (rank, v) -> suffix
};

// What a builder needs to know about a memory. Explicit memories answer
// from their address list; the synthetic worst case answers by formula so
// that count-only builds never enumerate 2^q addresses.
struct MemoryView {
    int n = 0;
    std::int64_t size = 0;
    std::function<std::uint64_t(std::int64_t)> address;
    std::function<bool(std::uint64_t)> contains;
    std::function<TierProfile(int)> tiers;
};

MemoryView view_of(const MemorySpec& mem);
MemoryView worst_case_view(int n, int q, int k);

// Group sizes of the worst-case tiering profile, descending.
std::vector<TierClass> worst_case_classes(int n, int q, int k);

}  // namespace qram::detail
