#include <bit>

#include "qram/families.hpp"

namespace qram {

namespace {

using i64 = std::int64_t;

i64 pow2(int e) { return i64{1} << e; }

i64 ceil_log2(i64 x) { return x <= 1 ? 0 : std::bit_width(static_cast<std::uint64_t>(x - 1)); }

i64 ceil_div(i64 a, i64 b) { return (a + b - 1) / b; }

ResourceCounts counts(i64 nq, i64 d, i64 tc, i64 td, i64 hc, i64 cnot) {
    return {nq, d, tc, td, hc, cnot};
}

}  // namespace

bool has_closed_form(const FamilyConfig& c) {
    switch (c.family) {
        case Family::HybridT1Parallel:
        case Family::HybridT2Parallel:
        case Family::HybridParallel: return false;
        case Family::Hybrid: return c.k >= 0 && c.q >= 0 && c.k < c.q;
        default: return true;
    }
}

ResourceCounts formula_counts(const FamilyConfig& c) {
    validate(c);
    const i64 n = c.n, N = pow2(c.n);
    if (is_selectswap(c.family))
        return selectswap_bounds(N, c.b, c.lambda,
                                 c.family == Family::SelectSwapClean ? SelectSwapMode::Clean : SelectSwapMode::Dirty)
            .counts;
    // Both bucket-brigade blocks are silent on H; every td1 Toffoli carries two.
    const i64 toffolis = 3 * N - 4;
    switch (c.family) {
        case Family::BBSerial:
            return counts(n + 2 * N + 5, 21 * N + 2 * n - 26, 21 * N - 28, 3 * N - 4, 2 * toffolis, 50 * N - 64);
        case Family::BBParallel:
            return counts(8 * N, 16 * n - 5, 21 * N - 28, 2 * n - 1, 2 * toffolis, 54 * N - 2 * n - 66);
        default: break;
    }
    if (c.q < 0) throw Error("q required for " + std::string(family_name(c.family)));
    const i64 Q = pow2(c.q);
    switch (c.family) {
        case Family::LargeDepth:
            return counts(2 * n, Q * (28 * n - 60), Q * (12 * n - 20), 4 * Q * (n - 2), Q * (4 * n - 6),
                          Q * (24 * n - 40));
        case Family::LargeWidth:
            return counts(n * 2 * Q + 1, 28 * n + 3 * c.q - 58, Q * (12 * n - 20), 4 * (n - 2), Q * (4 * n - 6),
                          Q * (26 * n - 38) - 2 * n);
        case Family::Hybrid: {
            if (c.k >= c.q)
                throw Error("hybrid closed form requires k < q; use the circuit builder for k >= q");
            const i64 k = c.k, K = pow2(c.k), m = n - k + 1;
            return counts(n + K + 1 + std::max(k - 1, n - k), 2 * K * (28 * k - 60) + Q * (28 * m - 60),
                          2 * K * (12 * k - 20) + Q * (12 * m - 20), 2 * K * 4 * (k - 2) + Q * 4 * (m - 2),
                          2 * K * (4 * k - 6) + Q * (4 * m - 6), 2 * K * (24 * k - 40) + Q * (24 * m - 40));
        }
        default:
            throw Error(std::string(family_name(c.family)) +
                        " has no closed form; use the circuit builder");
    }
}

SelectSwapBounds selectswap_bounds(i64 N, i64 b, i64 lambda, SelectSwapMode mode) {
    if (b < 1) throw Error("b >= 1 required");
    if (lambda < 1) throw Error("lambda >= 1 required");
    if (N < 1) throw Error("N >= 1 required");
    if (lambda > N) throw Error("lambda must not exceed N");
    const i64 select = ceil_div(N, lambda), addr = 2 * ceil_log2(N);
    SelectSwapBounds out;
    auto& r = out.counts;
    if (mode == SelectSwapMode::Clean) {
        r.qubits = b * lambda + addr;
        r.t_count = 4 * select + 8 * b * lambda;
    } else {
        r.qubits = (b + 1) * lambda + addr;
        r.t_count = 8 * select + 32 * b * lambda;
    }
    r.t_depth = select + ceil_log2(lambda);
    return out;
}

std::pair<i64, i64> optimal_lambda(i64 N, i64 b, SelectSwapMode mode) {
    // T-count = c1 * ceil(N / lambda) + c2 * lambda, so within each run of
    // lambdas sharing ceil(N / lambda) the smallest lambda wins.
    std::pair<i64, i64> best{0, 0};
    for (i64 l = 1; l <= N;) {
        const i64 t = selectswap_bounds(N, b, l, mode).counts.t_count;
        if (best.first == 0 || t < best.second) best = {l, t};
        const i64 v = ceil_div(N, l);
        if (v == 1) break;
        l = ceil_div(N, v - 1);
    }
    return best;
}

}  // namespace qram
