#include <algorithm>
#include <array>
#include <bit>
#include <map>

#include "qram/decomp.hpp"
#include "synth.hpp"

namespace qram {

namespace detail {

namespace {

std::uint16_t encode(const ParityState& s) {
    std::uint16_t v = 0;
    for (std::size_t i = 0; i < s.size(); ++i) v |= static_cast<std::uint16_t>(s[i] << (3 * i));
    return v;
}

ParityState decode(std::uint16_t v, std::size_t n) {
    ParityState s(n);
    for (std::size_t i = 0; i < n; ++i) s[i] = (v >> (3 * i)) & 7;
    return s;
}

std::vector<CnotLayer> all_layers(int n) {
    std::vector<std::pair<int, int>> pairs;
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            if (a != b) pairs.emplace_back(a, b);
    std::vector<CnotLayer> out;
    for (const auto& p : pairs) out.push_back({p});
    for (std::size_t i = 0; i < pairs.size(); ++i)
        for (std::size_t j = i + 1; j < pairs.size(); ++j) {
            auto [a, b] = pairs[i];
            auto [c, d] = pairs[j];
            if (a != c && a != d && b != c && b != d) out.push_back({pairs[i], pairs[j]});
        }
    return out;
}

struct Visit {
    int depth;
    int count;
    std::uint16_t parent;
    int layer;
};

}  // namespace

void apply_layers(ParityState& state, const std::vector<CnotLayer>& layers) {
    for (const auto& layer : layers)
        for (auto [c, t] : layer) state[t] ^= state[c];
}

std::vector<CnotLayer> cnot_search(const ParityState& start,
                                   const std::function<bool(const ParityState&)>& goal) {
    if (goal(start)) return {};
    const std::size_t n = start.size();
    const auto layers = all_layers(static_cast<int>(n));
    std::map<std::uint16_t, Visit> best;
    best[encode(start)] = {0, 0, 0, -1};
    std::vector<std::uint16_t> frontier{encode(start)};
    for (int depth = 1; !frontier.empty(); ++depth) {
        std::vector<std::uint16_t> order;
        std::map<std::uint16_t, Visit> next;
        for (auto st : frontier) {
            const int c0 = best[st].count;
            const ParityState s = decode(st, n);
            for (std::size_t li = 0; li < layers.size(); ++li) {
                ParityState s2 = s;
                for (auto [c, t] : layers[li]) s2[t] ^= s2[c];
                const auto key = encode(s2);
                const int count = c0 + static_cast<int>(layers[li].size());
                if (auto it = best.find(key); it != best.end()) {
                    const auto& b = it->second;
                    if (b.depth < depth || (b.depth == depth && b.count <= count)) continue;
                }
                if (auto it = next.find(key); it != next.end()) {
                    if (it->second.count <= count) continue;
                    it->second = {depth, count, st, static_cast<int>(li)};
                    continue;
                }
                next[key] = {depth, count, st, static_cast<int>(li)};
                order.push_back(key);
            }
        }
        for (const auto& [k, v] : next) best[k] = v;
        std::uint16_t found = 0;
        int found_count = -1;
        for (auto k : order) {
            if (!goal(decode(k, n))) continue;
            if (found_count < 0 || best[k].count < found_count) {
                found = k;
                found_count = best[k].count;
            }
        }
        if (found_count >= 0) {
            std::vector<CnotLayer> seq;
            for (auto k = found; best[k].layer >= 0; k = best[k].parent)
                seq.push_back(layers[best[k].layer]);
            std::reverse(seq.begin(), seq.end());
            return seq;
        }
        frontier = std::move(order);
    }
    throw Error("CNOT network search failed");
}

}  // namespace detail

namespace {

using detail::CnotLayer;
using detail::ParityState;

void emit_layers(std::vector<Gate>& out, const std::vector<CnotLayer>& layers) {
    for (const auto& layer : layers)
        for (auto [c, t] : layer) out.push_back(Gate::cnot(c, t));
}

void emit_phase(std::vector<Gate>& out, int wire, std::uint8_t mask) {
    out.push_back(std::popcount(mask) % 2 ? Gate::t(wire) : Gate::tdg(wire));
}

// CCZ on wires 0,1,2 via its seven parity phases, one T-layer per group.
std::vector<Gate> ccz_by_groups(std::size_t wires,
                                const std::vector<std::vector<std::uint8_t>>& groups) {
    ParityState start(wires, 0);
    start[0] = 1;
    start[1] = 2;
    start[2] = 4;
    ParityState cur = start;
    std::vector<Gate> out;
    for (const auto& group : groups) {
        auto net = detail::cnot_search(cur, [&](const ParityState& s) {
            return std::all_of(group.begin(), group.end(), [&](std::uint8_t m) {
                return std::find(s.begin(), s.end(), m) != s.end();
            });
        });
        emit_layers(out, net);
        detail::apply_layers(cur, net);
        for (auto m : group)
            emit_phase(out, static_cast<int>(std::find(cur.begin(), cur.end(), m) - cur.begin()), m);
    }
    auto back = detail::cnot_search(cur, [&](const ParityState& s) { return s == start; });
    emit_layers(out, back);
    return out;
}

std::vector<Gate> build_td1() {
    // Wires 0,1,2 = a, b, t; 3..6 clean ancillae. Three CNOT layers leave the
    // seven nonzero parities of (a, b, t) on seven distinct wires.
    const std::vector<CnotLayer> net = {
        {{0, 3}, {1, 4}},
        {{0, 5}, {1, 6}, {2, 3}},
        {{1, 0}, {2, 4}, {3, 6}},
    };
    ParityState st = {1, 2, 4, 0, 0, 0, 0};
    detail::apply_layers(st, net);
    std::vector<Gate> out{Gate::h(2)};
    emit_layers(out, net);
    for (int w = 0; w < 7; ++w) emit_phase(out, w, st[w]);
    for (auto it = net.rbegin(); it != net.rend(); ++it)
        for (auto [c, t] : *it) out.push_back(Gate::cnot(c, t));
    out.push_back(Gate::h(2));
    return out;
}

std::vector<Gate> build_toffoli(ToffoliVariant v) {
    if (v == ToffoliVariant::TD1) return build_td1();
    std::vector<Gate> out{Gate::h(2)};
    std::vector<Gate> body =
        v == ToffoliVariant::TD3 ? ccz_by_groups(3, {{1, 2, 4}, {3, 6, 7}, {5}})
                                 : ccz_by_groups(4, {{1, 2, 4, 7}, {3, 5, 6}});
    out.insert(out.end(), body.begin(), body.end());
    out.push_back(Gate::h(2));
    return out;
}

int wires_of(ToffoliVariant v) { return 3 + toffoli_ancillas(v); }

const std::vector<Gate>& aligned_toffoli(ToffoliVariant variant) {
    static const std::array<std::vector<Gate>, 3> cache = [] {
        std::array<std::vector<Gate>, 3> out;
        for (auto v : {ToffoliVariant::TD3, ToffoliVariant::TD2, ToffoliVariant::TD1}) {
            detail::TAligner al(static_cast<std::size_t>(wires_of(v)));
            for (const auto& g : toffoli_template(v)) al.push(g);
            out[static_cast<std::size_t>(v)] = al.finish();
        }
        return out;
    }();
    return cache[static_cast<std::size_t>(variant)];
}

Gate remap(const Gate& g, std::span<const int> slots) {
    Gate r = g;
    for (int& q : r.qubits) q = slots[q];
    return r;
}

}  // namespace

std::string_view variant_name(ToffoliVariant v) {
    switch (v) {
        case ToffoliVariant::TD3: return "td3";
        case ToffoliVariant::TD2: return "td2";
        case ToffoliVariant::TD1: return "td1";
    }
    return "td1";
}

ToffoliVariant parse_variant(std::string_view name) {
    if (name == "td3") return ToffoliVariant::TD3;
    if (name == "td2") return ToffoliVariant::TD2;
    if (name == "td1") return ToffoliVariant::TD1;
    throw Error("unknown Toffoli variant '" + std::string(name) + "'");
}

int toffoli_ancillas(ToffoliVariant v) {
    switch (v) {
        case ToffoliVariant::TD3: return 0;
        case ToffoliVariant::TD2: return 1;
        case ToffoliVariant::TD1: return 4;
    }
    return 4;
}

const std::vector<Gate>& toffoli_template(ToffoliVariant variant) {
    static const std::array<std::vector<Gate>, 3> cache = {
        build_toffoli(ToffoliVariant::TD3), build_toffoli(ToffoliVariant::TD2),
        build_toffoli(ToffoliVariant::TD1)};
    return cache[static_cast<std::size_t>(variant)];
}

namespace {

std::vector<int> toffoli_slots(ToffoliVariant variant, int c1, int c2, int target,
                               std::span<const int> ancillas) {
    const auto need = static_cast<std::size_t>(toffoli_ancillas(variant));
    if (ancillas.size() < need)
        throw Error("Toffoli " + std::string(variant_name(variant)) + " needs " +
                    std::to_string(need) + " ancillae, got " + std::to_string(ancillas.size()));
    std::vector<int> slots{c1, c2, target};
    slots.insert(slots.end(), ancillas.begin(), ancillas.begin() + static_cast<long>(need));
    Gate check = Gate::toffoli(c1, c2, target);
    check.validate();
    for (std::size_t i = 0; i < slots.size(); ++i)
        for (std::size_t j = i + 1; j < slots.size(); ++j)
            if (slots[i] == slots[j]) throw Error("duplicate operand");
    return slots;
}

std::vector<Gate> remap_all(const std::vector<Gate>& tpl, std::span<const int> slots) {
    std::vector<Gate> out;
    out.reserve(tpl.size());
    for (const auto& g : tpl) out.push_back(remap(g, slots));
    return out;
}

}  // namespace

std::vector<Gate> decompose_toffoli(ToffoliVariant variant, int c1, int c2, int target,
                                    std::span<const int> ancillas) {
    return remap_all(aligned_toffoli(variant), toffoli_slots(variant, c1, c2, target, ancillas));
}

namespace detail {

std::vector<Gate> toffoli_fragment(ToffoliVariant variant, int c1, int c2, int target,
                                   std::span<const int> ancillas) {
    return remap_all(toffoli_template(variant), toffoli_slots(variant, c1, c2, target, ancillas));
}

void TAligner::place(Gate g) {
    if (g.kind != GateKind::X) {
        std::int64_t layer = 0;
        for (int q : g.qubits) layer = std::max(layer, frontier_[static_cast<std::size_t>(q)]);
        for (int q : g.qubits) frontier_[static_cast<std::size_t>(q)] = layer + 1;
    }
    out_.push_back(std::move(g));
}

void TAligner::flush() {
    std::int64_t target = 0;
    for (const auto& g : run_) target = std::max(target, frontier_[static_cast<std::size_t>(g.qubits[0])] + 1);
    for (const auto& g : run_) {
        const int q = g.qubits[0];
        bool plus = g.kind == GateKind::T;
        // S^a T^b keeps the phase when 2a + b matches the original exponent.
        const std::int64_t pads = target - (frontier_[static_cast<std::size_t>(q)] + 1);
        for (std::int64_t k = 0; k + 1 < pads; k += 2) {
            place(Gate::s(q));
            place(Gate::sdg(q));
        }
        if (pads % 2) {
            place(plus ? Gate::s(q) : Gate::sdg(q));
            plus = !plus;
        }
        place(plus ? Gate::t(q) : Gate::tdg(q));
    }
    run_.clear();
}

void TAligner::push(Gate g) {
    if (!is_t_gate(g.kind)) {
        flush();
        place(std::move(g));
        return;
    }
    for (const auto& r : run_)
        if (r.qubits[0] == g.qubits[0]) {
            flush();
            break;
        }
    run_.push_back(std::move(g));
}

std::int64_t TAligner::frontier(int q) {
    flush();
    return frontier_[static_cast<std::size_t>(q)];
}

std::vector<Gate> TAligner::finish() {
    flush();
    return std::move(out_);
}

}  // namespace detail

}  // namespace qram
