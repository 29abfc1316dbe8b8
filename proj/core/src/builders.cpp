#include <algorithm>
#include <array>

#include "memory_view.hpp"

namespace qram {

namespace {

using i64 = std::int64_t;
using detail::MemoryView;
using detail::TierProfile;

constexpr std::array kFamilyNames = {
    "bb-serial", "bb-parallel", "large-depth", "large-width", "hybrid",
    "hybrid-t1-parallel", "hybrid-t2-parallel", "hybrid-parallel",
    "selectswap-clean", "selectswap-dirty",
};

Operand fixed(int reg, i64 idx) { return {reg, idx, {}}; }
Operand stream(int reg, i64 base, i64 iterations) { return {reg, base, {{0, iterations, 0, 1}}}; }

Block make(GateKind kind, std::vector<Operand> qubits, i64 count = 1) {
    Block b;
    b.kind = kind;
    b.qubits = std::move(qubits);
    b.count = count;
    return b;
}

// Bits x_lo .. x_{lo+width-1} of an n-bit value, most significant first.
std::vector<bool> bits_of(std::uint64_t value, int width) {
    std::vector<bool> out(static_cast<std::size_t>(width));
    for (int i = 0; i < width; ++i) out[static_cast<std::size_t>(i)] = (value >> (width - 1 - i)) & 1;
    return out;
}

// Maps a parallel instance i to a qubit, stride 1 between breakpoints.
struct Lane {
    std::vector<std::pair<i64, Operand>> segs;  // (first instance, operand there)

    static Lane range(int reg, i64 base) { return {{{0, fixed(reg, base)}}}; }

    Operand at(i64 i) const {
        auto it = std::upper_bound(segs.begin(), segs.end(), i,
                                   [](i64 v, const auto& s) { return v < s.first; }) - 1;
        return fixed(it->second.reg, it->second.base + (i - it->first));
    }
};

// `copies` virtual copies of `lanes` source qubits (src_base + g). Copy v of
// lane g is the source itself for v = 0 and copy_reg[copy_base + (v-1)*lanes + g]
// otherwise, so a run of whole ranks is contiguous.
struct Fan {
    int src_reg;
    i64 src_base;
    int copy_reg;
    i64 copy_base;
    i64 lanes;
    i64 copies;

    i64 extra() const { return (copies - 1) * lanes; }

    // Instance i = v * lanes + g.
    Lane lane(i64 first_instance = 0) const {
        Lane l{{{first_instance, fixed(src_reg, src_base)}}};
        if (copies > 1) l.segs.push_back({first_instance + lanes, fixed(copy_reg, copy_base)});
        return l;
    }
};

class Builder {
public:
    Builder(const FamilyConfig& c, MemoryView mem) : c_(c), mem_(std::move(mem)) {
        p_.variant = c.variant;
    }

    Program build() {
        switch (c_.family) {
            case Family::BBSerial: bb_serial(); break;
            case Family::BBParallel: bb_parallel(); break;
            case Family::LargeDepth: large_depth(); break;
            case Family::LargeWidth: large_width(); break;
            case Family::Hybrid:
            case Family::HybridT1Parallel:
            case Family::HybridT2Parallel:
            case Family::HybridParallel: hybrid(); break;
            default: throw Error(std::string(family_name(c_.family)) + " has no circuit builder (bound model only)");
        }
        return std::move(p_);
    }

private:
    void add(Block b) {
        if (b.count > 0) p_.ops.emplace_back(std::move(b));
    }

    void loop(i64 iterations, std::vector<Block> body) {
        if (iterations > 0) p_.ops.emplace_back(Loop{iterations, std::move(body)});
    }

    // Emits one parallel gate over `count` instances, split wherever a lane
    // changes register or jumps.
    void parallel(GateKind kind, const std::vector<Lane>& qubits, const std::vector<Lane>& ancillas,
                  i64 count, std::function<std::vector<bool>(i64)> polarity = {}) {
        std::vector<i64> cuts{0, count};
        for (const auto* group : {&qubits, &ancillas})
            for (const auto& l : *group)
                for (const auto& s : l.segs)
                    if (s.first > 0 && s.first < count) cuts.push_back(s.first);
        std::sort(cuts.begin(), cuts.end());
        cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
        for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
            const i64 lo = cuts[i];
            Block b = make(kind, {}, cuts[i + 1] - lo);
            for (const auto& l : qubits) b.qubits.push_back(l.at(lo));
            for (const auto& l : ancillas) b.ancillas.push_back(l.at(lo));
            if (polarity) b.polarity = [polarity, lo](i64 j) { return polarity(lo + j); };
            add(std::move(b));
        }
    }

    // Pool lanes for `roles` ancillae per gate, role-major with stride `block`.
    std::vector<Lane> pool_lanes(int roles, i64 block) const {
        std::vector<Lane> out;
        for (int r = 0; r < roles; ++r) out.push_back(Lane::range(anc_, r * block));
        return out;
    }

    std::vector<Operand> pool_fixed(int roles) const {
        std::vector<Operand> out;
        for (int r = 0; r < roles; ++r) out.push_back(fixed(anc_, r));
        return out;
    }

    // Doubling fanout: step t copies ranks [0, 2^t) onto [2^t, 2^(t+1)).
    std::vector<Block> fan_steps(const Fan& f) const {
        std::vector<Block> out;
        for (i64 h = 1; h < f.copies; h *= 2) {
            const i64 e = std::min(2 * h, f.copies);
            // rank 0 (the source) onto rank h
            out.push_back(make(GateKind::CNOT,
                               {fixed(f.src_reg, f.src_base), fixed(f.copy_reg, f.copy_base + (h - 1) * f.lanes)},
                               f.lanes));
            if (e > h + 1)
                out.push_back(make(GateKind::CNOT,
                                   {fixed(f.copy_reg, f.copy_base), fixed(f.copy_reg, f.copy_base + h * f.lanes)},
                                   (e - h - 1) * f.lanes));
        }
        return out;
    }

    void fanout(const std::vector<Fan>& fans) {
        for (const auto& f : fans)
            for (auto& b : fan_steps(f)) add(std::move(b));
    }

    void unfanout(const std::vector<Fan>& fans) {
        for (auto f = fans.rbegin(); f != fans.rend(); ++f) {
            auto steps = fan_steps(*f);
            for (auto b = steps.rbegin(); b != steps.rend(); ++b) add(std::move(*b));
        }
    }

    // XOR of reg[0..len) collected into reg[0] by a halving tree, and back.
    std::vector<Block> reduce_steps(int reg, i64 len) const {
        std::vector<Block> out;
        for (i64 l = len; l > 1;) {
            const i64 half = (l + 1) / 2;
            out.push_back(make(GateKind::CNOT, {fixed(reg, half), fixed(reg, 0)}, l - half));
            l = half;
        }
        return out;
    }

    // Even-parity collection: reduce, copy out, flip the parity back, unreduce.
    void parity_readout(int P, i64 len) {
        auto steps = reduce_steps(P, len);
        for (const auto& b : steps) add(b);
        add(make(GateKind::CNOT, {fixed(P, 0), fixed(out_, 0)}));
        add(make(GateKind::CNOT, {fixed(out_, 0), fixed(P, 0)}));
        for (auto b = steps.rbegin(); b != steps.rend(); ++b) add(*b);
    }

    void prepare_parity(int P, i64 len, bool teardown) {
        if (!c_.prepare_parity || len < 2) return;
        Block h = make(GateKind::H, {fixed(P, 1)}, len - 1);
        Block chain = make(GateKind::CNOT, {stream(P, 1, len - 1), fixed(P, 0)});
        if (!teardown) add(h);
        loop(len - 1, {chain});
        if (teardown) add(h);
    }

    // Cell j sits next to trigger j, whose index has x1 as its lowest bit.
    void memory_cells(int M) {
        Block b = make(GateKind::X, {fixed(M, 0)}, i64{1} << c_.n);
        auto contains = mem_.contains;
        const int n = c_.n;
        b.when = [contains, n](i64 j) {
            std::uint64_t a = 0;
            for (int i = 0; i < n; ++i) a |= ((static_cast<std::uint64_t>(j) >> i) & 1) << (n - 1 - i);
            return contains(a);
        };
        add(std::move(b));
    }

    void common_registers() {
        addr_ = p_.add_register("address", RegisterRole::Address, c_.n);
        out_ = p_.add_register("output", RegisterRole::Output, 1);
    }

    // Decoder level 1 and its inverse: R0 = not x1, R1 = x1.
    void first_level(int R, bool inverse) {
        std::vector<Block> b = {make(GateKind::X, {fixed(R, 0)}),
                                make(GateKind::CNOT, {fixed(addr_, 0), fixed(R, 1)}),
                                make(GateKind::CNOT, {fixed(R, 1), fixed(R, 0)})};
        if (inverse) std::reverse(b.begin(), b.end());
        for (auto& x : b) add(std::move(x));
    }

    void bb_serial() {
        const int n = c_.n;
        const i64 N = i64{1} << n;
        const int ta = toffoli_ancillas(c_.variant);
        common_registers();
        anc_ = p_.add_register("ancilla", RegisterRole::Ancilla, ta);
        const int M = p_.add_register("memory", RegisterRole::Memory, N);
        const int R = p_.add_register("trigger", RegisterRole::Trigger, N);
        auto tof = [&](Operand a, Operand b, Operand t) {
            Block x = make(GateKind::TOFFOLI, {std::move(a), std::move(b), std::move(t)});
            x.ancillas = pool_fixed(ta);
            return x;
        };
        auto level = [&](int i, bool inverse) {
            const i64 h = i64{1} << (i - 1);
            Block t = tof(fixed(addr_, i - 1), stream(R, 0, h), stream(R, h, h));
            Block c = make(GateKind::CNOT, {stream(R, h, h), stream(R, 0, h)});
            // Pairs (R_j, R_{j+h}) are disjoint across j, so the inverse keeps j ascending.
            loop(h, inverse ? std::vector<Block>{c, t} : std::vector<Block>{t, c});
        };
        memory_cells(M);
        first_level(R, false);
        for (int i = 2; i <= n; ++i) level(i, false);
        loop(N, {tof(stream(R, 0, N), stream(M, 0, N), fixed(out_, 0))});
        for (int i = n; i >= 2; --i) level(i, true);
        first_level(R, true);
        memory_cells(M);
    }

    void bb_parallel() {
        const int n = c_.n;
        const i64 N = i64{1} << n;
        const int ta = toffoli_ancillas(c_.variant);
        common_registers();
        const int P = p_.add_register("parity", RegisterRole::ParityRegister, N);
        anc_ = p_.add_register("ancilla", RegisterRole::Ancilla, ta * N);
        const int M = p_.add_register("memory", RegisterRole::Memory, N);
        const int R = p_.add_register("trigger", RegisterRole::Trigger, N);
        const int C = p_.add_register("copy", RegisterRole::Copy, N - n - 1);
        std::vector<Fan> fans;
        i64 off = 0;
        for (int i = 2; i <= n; ++i) {
            fans.push_back({addr_, i - 1, C, off, 1, i64{1} << (i - 1)});
            off += fans.back().extra();
        }
        auto level = [&](int i, bool inverse) {
            const i64 h = i64{1} << (i - 1);
            auto tof = [&] {
                parallel(GateKind::TOFFOLI,
                         {fans[static_cast<std::size_t>(i - 2)].lane(), Lane::range(R, 0), Lane::range(R, h)},
                         pool_lanes(ta, N), h);
            };
            auto cn = [&] { add(make(GateKind::CNOT, {fixed(R, h), fixed(R, 0)}, h)); };
            if (inverse) cn(), tof();
            else tof(), cn();
        };
        memory_cells(M);
        fanout(fans);
        prepare_parity(P, N, false);
        first_level(R, false);
        for (int i = 2; i <= n; ++i) level(i, false);
        parallel(GateKind::TOFFOLI, {Lane::range(R, 0), Lane::range(M, 0), Lane::range(P, 0)},
                 pool_lanes(ta, N), N);
        parity_readout(P, N);
        for (int i = n; i >= 2; --i) level(i, true);
        first_level(R, true);
        prepare_parity(P, N, true);
        unfanout(fans);
        memory_cells(M);
    }

    std::function<std::vector<bool>(i64)> address_polarity() const {
        auto address = mem_.address;
        const int n = c_.n;
        return [address, n](i64 j) { return bits_of(address(j), n); };
    }

    void large_depth() {
        const int n = c_.n;
        common_registers();
        anc_ = p_.add_register("ancilla", RegisterRole::Ancilla, n - 1);
        Block g = make(GateKind::MPMCT, {});
        for (int b = 0; b < n; ++b) g.qubits.push_back(fixed(addr_, b));
        g.qubits.push_back(fixed(out_, 0));
        g.ancillas = pool_fixed(n - 1);
        g.polarity = address_polarity();
        loop(mem_.size, {g});
        if (c_.complement) add(make(GateKind::X, {fixed(out_, 0)}));
    }

    void large_width() {
        const int n = c_.n;
        const i64 W = mem_.size;
        common_registers();
        const int P = p_.add_register("parity", RegisterRole::ParityRegister, W);
        anc_ = p_.add_register("ancilla", RegisterRole::Ancilla, (n - 1) * W);
        const int C = p_.add_register("copy", RegisterRole::Copy, n * (W - 1));
        std::vector<Fan> fans;
        for (int b = 0; b < n; ++b) fans.push_back({addr_, b, C, b * (W - 1), 1, W});
        fanout(fans);
        prepare_parity(P, W, false);
        std::vector<Lane> qs;
        for (const auto& f : fans) qs.push_back(f.lane());
        qs.push_back(Lane::range(P, 0));
        parallel(GateKind::MPMCT, qs, pool_lanes(n - 1, W), W, address_polarity());
        parity_readout(P, W);
        prepare_parity(P, W, true);
        unfanout(fans);
    }

    void hybrid() {
        const int n = c_.n, k = c_.k;
        const bool top_par = c_.family == Family::HybridT1Parallel || c_.family == Family::HybridParallel;
        const bool bot_par = c_.family == Family::HybridT2Parallel || c_.family == Family::HybridParallel;
        const i64 G = i64{1} << k;
        const i64 W = mem_.size;
        const TierProfile tiers = mem_.tiers(k);
        const int top_anc = mpmct_ancillas(k), bot_anc = mpmct_ancillas(n - k + 1);

        common_registers();
        const int P = bot_par ? p_.add_register("parity", RegisterRole::ParityRegister, W) : -1;
        const i64 top_pool = top_par ? top_anc * G : top_anc;
        const i64 bot_pool = bot_par ? bot_anc * W : bot_anc;
        anc_ = p_.add_register("ancilla", RegisterRole::Ancilla, std::max(top_pool, bot_pool));
        const int T = p_.add_register("tier", RegisterRole::Trigger, G);
        i64 copies = 0;
        if (top_par) copies += k * (G - 1);
        if (bot_par) {
            copies += (n - k) * (W - 1);
            for (const auto& c : tiers.classes) copies += std::max<i64>(c.size - 1, 0) * c.count;
        }
        const int C = copies > 0 ? p_.add_register("copy", RegisterRole::Copy, copies) : -1;

        i64 off = 0;
        std::vector<Fan> prefix_fans, suffix_fans, tier_fans;
        if (top_par)
            for (int b = 0; b < k; ++b) {
                prefix_fans.push_back({addr_, b, C, off, 1, G});
                off += prefix_fans.back().extra();
            }
        if (bot_par)
            for (int b = k; b < n; ++b) {
                suffix_fans.push_back({addr_, b, C, off, 1, W});
                off += suffix_fans.back().extra();
            }
        // Bottom-tier instance order: class by class, rank-major inside a class.
        struct ClassSpan {
            i64 size, count, first_rank, first_instance;
        };
        std::vector<ClassSpan> spans;
        Lane tier_lane;
        i64 rank = 0, inst = 0;
        for (const auto& c : tiers.classes) {
            if (c.size > 0) {
                spans.push_back({c.size, c.count, rank, inst});
                if (bot_par) {
                    tier_fans.push_back({T, rank, C, off, c.count, c.size});
                    off += tier_fans.back().extra();
                    for (const auto& s : tier_fans.back().lane(inst).segs) tier_lane.segs.push_back(s);
                }
                inst += c.size * c.count;
            }
            rank += c.count;
        }

        auto prefix = tiers.prefix;
        auto suffix = tiers.suffix;
        auto top_polarity = [prefix, k](i64 g) { return bits_of(prefix(g), k); };
        auto bottom_polarity = [spans, suffix, n, k, bot_par](i64 i) {
            for (const auto& s : spans) {
                const i64 rel = i - s.first_instance;
                if (rel >= s.size * s.count) continue;
                // parallel: rank-major inside the class; sequential: group-major
                const i64 g = bot_par ? rel % s.count : rel / s.size;
                const i64 v = bot_par ? rel / s.count : rel % s.size;
                auto bits = bits_of(suffix(s.first_rank + g, v), n - k);
                bits.insert(bits.begin(), true);
                return bits;
            }
            throw Error("bottom-tier instance out of range");
        };

        auto top_tier = [&] {
            if (top_par) {
                std::vector<Lane> qs;
                for (const auto& f : prefix_fans) qs.push_back(f.lane());
                qs.push_back(Lane::range(T, 0));
                parallel(GateKind::MPMCT, qs, pool_lanes(top_anc, G), G, top_polarity);
                return;
            }
            Block g = make(GateKind::MPMCT, {});
            for (int b = 0; b < k; ++b) g.qubits.push_back(fixed(addr_, b));
            g.qubits.push_back(stream(T, 0, G));
            g.ancillas = pool_fixed(top_anc);
            g.polarity = top_polarity;
            loop(G, {g});
        };

        if (top_par) fanout(prefix_fans);
        if (bot_par) fanout(suffix_fans);
        top_tier();
        if (bot_par) {
            fanout(tier_fans);
            prepare_parity(P, W, false);
            std::vector<Lane> qs{tier_lane};
            for (const auto& f : suffix_fans) qs.push_back(f.lane());
            qs.push_back(Lane::range(P, 0));
            parallel(GateKind::MPMCT, qs, pool_lanes(bot_anc, W), W, bottom_polarity);
            parity_readout(P, W);
            prepare_parity(P, W, true);
            unfanout(tier_fans);
        } else {
            Operand t{T, 0, {}};
            for (const auto& s : spans)
                t.stairs.push_back({s.first_instance, s.first_instance + s.size * s.count, s.first_rank, s.size});
            Block g = make(GateKind::MPMCT, {t});
            for (int b = k; b < n; ++b) g.qubits.push_back(fixed(addr_, b));
            g.qubits.push_back(fixed(out_, 0));
            g.ancillas = pool_fixed(bot_anc);
            g.polarity = bottom_polarity;
            loop(W, {g});
        }
        top_tier();
        if (bot_par) unfanout(suffix_fans);
        if (top_par) unfanout(prefix_fans);
    }

    const FamilyConfig& c_;
    MemoryView mem_;
    Program p_;
    int addr_ = -1, out_ = -1, anc_ = -1;
};

MemoryView contiguous_view(int n, int q) {
    MemoryView v;
    v.n = n;
    v.size = i64{1} << q;
    v.address = [](i64 j) { return static_cast<std::uint64_t>(j); };
    const auto size = static_cast<std::uint64_t>(v.size);
    v.contains = [size](std::uint64_t a) { return a < size; };
    return v;
}

Program build_from_view(const FamilyConfig& config, const MemoryView& mem) {
    validate(config);
    if (mem.n != config.n)
        throw Error("memory has n=" + std::to_string(mem.n) + " but config has n=" + std::to_string(config.n));
    if (uses_mpmct(config.family) && !config.complement && config.q >= 0 && (i64{1} << config.q) != mem.size)
        throw Error("memory holds " + std::to_string(mem.size) + " ones but q=" + std::to_string(config.q));
    return Builder(config, mem).build();
}

}  // namespace

std::string_view family_name(Family f) { return kFamilyNames[static_cast<std::size_t>(f)]; }

Family parse_family(std::string_view name) {
    for (std::size_t i = 0; i < kFamilyNames.size(); ++i)
        if (name == kFamilyNames[i]) return static_cast<Family>(i);
    throw Error("unknown family '" + std::string(name) + "'");
}

const std::vector<Family>& all_families() {
    static const std::vector<Family> all = [] {
        std::vector<Family> v;
        for (std::size_t i = 0; i < kFamilyNames.size(); ++i) v.push_back(static_cast<Family>(i));
        return v;
    }();
    return all;
}

bool is_selectswap(Family f) { return f == Family::SelectSwapClean || f == Family::SelectSwapDirty; }

bool is_hybrid(Family f) {
    return f == Family::Hybrid || f == Family::HybridT1Parallel || f == Family::HybridT2Parallel ||
           f == Family::HybridParallel;
}

bool uses_mpmct(Family f) { return f == Family::LargeDepth || f == Family::LargeWidth || is_hybrid(f); }

void validate(const FamilyConfig& c) {
    const std::string name(family_name(c.family));
    if (c.n < 1 || c.n > 62) throw Error("n must be in [1, 62]");
    if (is_selectswap(c.family)) {
        if (c.lambda < 1) throw Error("lambda >= 1 required for " + name);
        if (c.b < 1) throw Error("b >= 1 required for " + name);
        if (c.lambda > (i64{1} << c.n)) throw Error("lambda must not exceed N = 2^n");
        return;
    }
    if (!uses_mpmct(c.family)) return;
    if (c.relaxed ? c.n < 2 : c.n < 4) throw Error("n ≥ 4 required");
    if (c.q >= c.n) throw Error("q must be below n");
    if (c.complement && c.family != Family::LargeDepth)
        throw Error("complement build is only defined for large-depth");
    if (!is_hybrid(c.family)) return;
    if (c.k < 0) throw Error("k required for " + name);
    if (c.relaxed ? (c.k < 2 || c.k > c.n - 1) : (c.k < 4 || c.k > c.n - 3))
        throw Error("k must satisfy 4 ≤ k ≤ n − 3");
}

Program build_program(const FamilyConfig& config, const MemorySpec& mem) {
    if (config.complement) return build_from_view(config, detail::view_of(complement(mem)));
    return build_from_view(config, detail::view_of(mem));
}

Program build_program(const FamilyConfig& config) {
    validate(config);
    if (uses_mpmct(config.family) && config.q < 0) throw Error("q required for count-only builds");
    const int q = std::max(config.q, 0);
    if (is_hybrid(config.family)) return build_from_view(config, detail::worst_case_view(config.n, q, config.k));
    return build_from_view(config, contiguous_view(config.n, q));
}

Circuit build_circuit(const FamilyConfig& config, const MemorySpec& mem, bool lower) {
    return materialize(build_program(config, mem), lower);
}

ResourceCounts builder_counts(const FamilyConfig& config, const MemorySpec& mem) {
    return count_program(build_program(config, mem));
}

ResourceCounts builder_counts(const FamilyConfig& config) { return count_program(build_program(config)); }

}  // namespace qram
