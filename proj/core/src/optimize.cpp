#include <cmath>
#include <future>

#include "qram/families.hpp"

namespace qram {

std::vector<std::pair<int, ResourceCounts>> hybrid_parallel_scan(int n, int q) {
    if (n < 7) throw Error("hybrid-parallel needs n >= 7 for a non-empty k range");
    if (q < 0 || q >= n) throw Error("q must be in [0, n)");
    std::vector<std::future<ResourceCounts>> jobs;
    for (int k = 4; k <= n - 3; ++k) {
        FamilyConfig c;
        c.family = Family::HybridParallel;
        c.n = n;
        c.q = q;
        c.k = k;
        jobs.push_back(std::async(std::launch::async, [c] { return builder_counts(c); }));
    }
    std::vector<std::pair<int, ResourceCounts>> out;
    for (int k = 4; k <= n - 3; ++k) out.emplace_back(k, jobs[static_cast<std::size_t>(k - 4)].get());
    return out;
}

int optimal_k(int n, int q) {
    int best = -1;
    long double best_cost = 0;
    for (const auto& [k, rc] : hybrid_parallel_scan(n, q)) {
        const long double cost = static_cast<long double>(rc.qubits) * static_cast<long double>(rc.t_depth);
        if (best < 0 || cost < best_cost) best = k, best_cost = cost;
    }
    return best;
}

int find_crossover_q(int n) {
    if (n < 5) throw Error("crossover search requires n >= 5");
    FamilyConfig bb;
    bb.family = Family::BBParallel;
    bb.n = n;
    const auto b = formula_counts(bb);
    const double bb_cost = std::log2(static_cast<double>(b.qubits)) + std::log2(static_cast<double>(b.t_depth));
    int best = -1;
    for (int q = 0; q < n; ++q) {
        FamilyConfig ld;
        ld.family = Family::LargeDepth;
        ld.n = n;
        ld.q = q;
        const auto l = formula_counts(ld);
        const double cost = std::log2(static_cast<double>(l.qubits)) + std::log2(static_cast<double>(l.t_depth));
        if (cost < bb_cost) best = q;
    }
    return best;
}

}  // namespace qram
