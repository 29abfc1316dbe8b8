// Mixed-polarity multi-controlled Toffoli over Clifford+T.
//
// The gate is the standard cascade of 4(c-2) Toffolis through a chain of
// c-2 ancillae (compute, core, uncompute, then the chain cleanup pass).
// Each Toffoli is written as H.CCZ.H, back-to-back Hadamards cancel, and the
// remaining CCZs are read as a phase polynomial over path variables (one new
// variable per Hadamard). Equal parities are merged. The odd-coefficient
// terms become T/T^dag gates; every even remainder is Clifford and is made
// diagonal-local: CZ pairs are absorbed by conjugating a subset of the odd
// terms (a GF(2) solve), leaving single-variable S powers. Each CCZ site then
// realizes its share of parities with a shallow CNOT network over its three
// wires plus one clean scratch wire, so all of its T gates share one layer.

#include <algorithm>
#include <array>
#include <climits>
#include <map>
#include <memory>
#include <mutex>

#include "qram/decomp.hpp"
#include "synth.hpp"

namespace qram {

namespace {

struct Event {
    bool hadamard;
    std::array<int, 3> q;  // H uses q[0]
};

// Toffolis (a, b -> z) of the cascade in local slots.
std::vector<std::array<int, 3>> cascade(int c) {
    const int t = c;
    auto anc = [c](int j) { return c + j; };  // chain ancilla a_j, j = 1..c-2
    auto tof = [&](int j) -> std::array<int, 3> {
        if (j == 1) return {0, 1, anc(1)};
        return {j, anc(j - 1), anc(j)};
    };
    const std::array<int, 3> top = {c - 1, anc(c - 2), t};
    std::vector<std::array<int, 3>> down, up;
    for (int j = c - 2; j >= 2; --j) down.push_back(tof(j));
    for (int j = 2; j <= c - 2; ++j) up.push_back(tof(j));
    std::vector<std::array<int, 3>> seq{top};
    seq.insert(seq.end(), down.begin(), down.end());
    seq.push_back(tof(1));
    seq.insert(seq.end(), up.begin(), up.end());
    seq.push_back(top);
    seq.insert(seq.end(), down.begin(), down.end());
    seq.push_back(tof(1));
    seq.insert(seq.end(), up.begin(), up.end());
    return seq;
}

std::vector<Event> cancelled_events(int c, int num_slots) {
    std::vector<Event> ev;
    for (const auto& [a, b, z] : cascade(c)) {
        ev.push_back({true, {z, -1, -1}});
        ev.push_back({false, {a, b, z}});
        ev.push_back({true, {z, -1, -1}});
    }
    for (bool changed = true; changed;) {
        changed = false;
        std::vector<int> last(static_cast<std::size_t>(num_slots), -1);
        for (std::size_t i = 0; i < ev.size() && !changed; ++i) {
            const auto& e = ev[i];
            if (e.hadamard) {
                const int q = e.q[0];
                if (last[q] >= 0 && ev[last[q]].hadamard) {
                    ev.erase(ev.begin() + static_cast<long>(i));
                    ev.erase(ev.begin() + last[q]);
                    changed = true;
                    break;
                }
                last[q] = static_cast<int>(i);
            } else {
                for (int q : e.q) last[q] = static_cast<int>(i);
            }
        }
    }
    return ev;
}

// A monomial parity over up to three path variables, sorted, INT_MAX padded.
using Term = std::array<int, 3>;

std::vector<int> vars_of(const Term& t) {
    std::vector<int> v;
    for (int x : t)
        if (x != INT_MAX) v.push_back(x);
    return v;
}

std::vector<std::pair<int, int>> pairs_of(const Term& t) {
    auto v = vars_of(t);
    std::vector<std::pair<int, int>> out;
    for (std::size_t i = 0; i < v.size(); ++i)
        for (std::size_t j = i + 1; j < v.size(); ++j) out.emplace_back(v[i], v[j]);
    return out;
}

struct Residual {
    std::map<int, int> single;  // variable -> power of S (mod 4)
    std::map<std::pair<int, int>, int> cz;

    // Adds i^(e * parity(t)).
    void add(const Term& t, int e) {
        e = ((e % 4) + 4) % 4;
        if (e == 0) return;
        for (int v : vars_of(t)) single[v] = (single[v] + e) % 4;
        if (e % 2)
            for (const auto& p : pairs_of(t)) cz[p] ^= 1;
    }
};

// Subset of columns (each a set of row keys) whose XOR equals `target`.
std::vector<bool> gf2_solve(const std::vector<std::vector<std::pair<int, int>>>& cols,
                            const std::vector<std::pair<int, int>>& target) {
    std::map<std::pair<int, int>, std::size_t> row_of;
    for (const auto& c : cols)
        for (const auto& k : c) row_of.emplace(k, row_of.size());
    for (const auto& k : target) row_of.emplace(k, row_of.size());
    const std::size_t rows = row_of.size(), n = cols.size();
    const std::size_t words = (n + 64) / 64;
    // Augmented matrix: column n holds the right-hand side.
    std::vector<std::vector<std::uint64_t>> m(rows, std::vector<std::uint64_t>(words, 0));
    auto set = [&](std::size_t r, std::size_t c) { m[r][c / 64] ^= std::uint64_t{1} << (c % 64); };
    auto get = [&](std::size_t r, std::size_t c) { return (m[r][c / 64] >> (c % 64)) & 1; };
    for (std::size_t j = 0; j < n; ++j)
        for (const auto& k : cols[j]) set(row_of[k], j);
    for (const auto& k : target) set(row_of[k], n);
    std::vector<std::size_t> pivots;
    std::size_t r = 0;
    for (std::size_t col = 0; col < n && r < rows; ++col) {
        std::size_t pr = r;
        while (pr < rows && !get(pr, col)) ++pr;
        if (pr == rows) continue;
        std::swap(m[r], m[pr]);
        for (std::size_t i = 0; i < rows; ++i)
            if (i != r && get(i, col))
                for (std::size_t w = 0; w < words; ++w) m[i][w] ^= m[r][w];
        pivots.push_back(col);
        ++r;
    }
    for (std::size_t i = r; i < rows; ++i)
        if (get(i, n)) throw Error("MPMCT synthesis: Clifford residual not absorbable");
    std::vector<bool> x(n, false);
    for (std::size_t i = 0; i < pivots.size(); ++i)
        if (get(i, n)) x[pivots[i]] = true;
    return x;
}

std::vector<Gate> synthesize(int c) {
    const int num_slots = 2 * c;
    const int scratch = 2 * c - 1;
    const auto ev = cancelled_events(c, num_slots);

    std::vector<int> cur(static_cast<std::size_t>(num_slots));
    std::vector<int> born, holder;
    for (int q = 0; q < num_slots; ++q) {
        cur[q] = q;
        born.push_back(-1);
        holder.push_back(q);
    }
    struct Acc {
        int coeff = 0;
        int first_event = 0;
    };
    std::map<Term, Acc> merged;
    std::vector<Term> order;
    std::vector<std::array<int, 3>> ev_vars(ev.size(), {-1, -1, -1});
    for (std::size_t i = 0; i < ev.size(); ++i) {
        const auto& e = ev[i];
        if (e.hadamard) {
            cur[e.q[0]] = static_cast<int>(born.size());
            born.push_back(static_cast<int>(i));
            holder.push_back(e.q[0]);
            continue;
        }
        const std::array<int, 3> vv = {cur[e.q[0]], cur[e.q[1]], cur[e.q[2]]};
        ev_vars[i] = vv;
        for (int sub = 1; sub < 8; ++sub) {
            Term t = {INT_MAX, INT_MAX, INT_MAX};
            int n = 0;
            for (int k = 0; k < 3; ++k)
                if (sub >> k & 1) t[n++] = vv[k];
            std::sort(t.begin(), t.end());
            auto [it, fresh] = merged.try_emplace(t, Acc{0, static_cast<int>(i)});
            if (fresh) order.push_back(t);
            it->second.coeff += (n % 2) ? 1 : -1;
        }
    }

    Residual res;
    struct Odd {
        Term term;
        int k;  // 1 or 7
        int event;
    };
    std::vector<Odd> odd;
    for (const auto& t : order) {
        const auto& a = merged[t];
        const int k = ((a.coeff % 8) + 8) % 8;
        if (k % 2 == 0) {
            res.add(t, k / 2);
            continue;
        }
        // w^k = w^k0 * i^((k - k0) / 2) with k0 in {1, 7}.
        const int k0 = (k == 1 || k == 3) ? 1 : 7;
        res.add(t, (k - k0) / 2);
        odd.push_back({t, k0, a.first_event});
    }

    std::vector<std::pair<int, int>> cz_target;
    for (const auto& [p, f] : res.cz)
        if (f) cz_target.push_back(p);
    std::vector<std::vector<std::pair<int, int>>> cols;
    for (const auto& o : odd) cols.push_back(pairs_of(o.term));
    const auto flip = gf2_solve(cols, cz_target);
    for (std::size_t j = 0; j < odd.size(); ++j) {
        if (!flip[j]) continue;
        // w^(k r) = w^(-k r) * i^(k r)
        res.add(odd[j].term, odd[j].k);
        odd[j].k = 8 - odd[j].k;
    }
    for (const auto& [p, f] : res.cz)
        if (f) throw Error("MPMCT synthesis: CZ residual left");

    std::map<int, std::vector<const Odd*>> assigned;
    for (const auto& o : odd) assigned[o.event].push_back(&o);
    std::map<int, std::vector<Gate>> after;  // keyed by birth event, -1 = start
    for (const auto& [v, e] : res.single) {
        const int q = holder[v];
        auto& g = after[born[v]];
        if (e == 1) g.push_back(Gate::s(q));
        if (e == 2) {
            g.push_back(Gate::s(q));
            g.push_back(Gate::s(q));
        }
        if (e == 3) g.push_back(Gate::sdg(q));
    }

    std::vector<Gate> out = after[-1];
    for (std::size_t i = 0; i < ev.size(); ++i) {
        const auto& e = ev[i];
        if (e.hadamard) {
            out.push_back(Gate::h(e.q[0]));
        } else {
            const std::array<int, 4> wires = {e.q[0], e.q[1], e.q[2], scratch};
            const auto& vv = ev_vars[i];
            std::vector<std::uint8_t> want;
            for (const Odd* o : assigned[static_cast<int>(i)]) {
                std::uint8_t m = 0;
                for (int v : vars_of(o->term)) {
                    auto pos = std::find(vv.begin(), vv.end(), v) - vv.begin();
                    if (pos == 3) throw Error("MPMCT synthesis: term outside its gadget");
                    m |= static_cast<std::uint8_t>(1 << pos);
                }
                want.push_back(m);
            }
            detail::ParityState st = {1, 2, 4, 0};
            auto net = detail::cnot_search(st, [&](const detail::ParityState& s) {
                return std::all_of(want.begin(), want.end(), [&](std::uint8_t m) {
                    return std::find(s.begin(), s.end(), m) != s.end();
                });
            });
            std::vector<Gate> fwd;
            for (const auto& layer : net)
                for (auto [a, b] : layer) fwd.push_back(Gate::cnot(wires[a], wires[b]));
            detail::apply_layers(st, net);
            out.insert(out.end(), fwd.begin(), fwd.end());
            const auto& terms = assigned[static_cast<int>(i)];
            for (std::size_t j = 0; j < terms.size(); ++j) {
                const int w = static_cast<int>(std::find(st.begin(), st.end(), want[j]) - st.begin());
                out.push_back(terms[j]->k == 1 ? Gate::t(wires[w]) : Gate::tdg(wires[w]));
            }
            out.insert(out.end(), fwd.rbegin(), fwd.rend());
        }
        if (auto it = after.find(static_cast<int>(i)); it != after.end())
            out.insert(out.end(), it->second.begin(), it->second.end());
    }
    return out;
}

}  // namespace

int mpmct_ancillas(int controls) { return controls - 1; }

const std::vector<Gate>& mpmct_template(int controls) {
    if (controls < 4) throw Error("MPMCT decomposition requires ≥ 4 controls");
    static std::mutex mu;
    static std::map<int, std::unique_ptr<std::vector<Gate>>> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto& slot = cache[controls];
    if (!slot) slot = std::make_unique<std::vector<Gate>>(synthesize(controls));
    return *slot;
}

namespace {

std::vector<int> mpmct_slots(const Gate& gate, std::span<const int> ancillas) {
    if (gate.kind != GateKind::MPMCT) throw Error("decompose_mpmct expects an MPMCT gate");
    gate.validate();
    const int c = static_cast<int>(gate.controls().size());
    if (c < 4) throw Error("MPMCT decomposition requires ≥ 4 controls");
    const auto need = static_cast<std::size_t>(mpmct_ancillas(c));
    if (ancillas.size() < need)
        throw Error("MPMCT with " + std::to_string(c) + " controls needs " + std::to_string(need) +
                    " ancillae, got " + std::to_string(ancillas.size()));
    std::vector<int> slots(gate.qubits.begin(), gate.qubits.end());
    slots.insert(slots.end(), ancillas.begin(), ancillas.begin() + static_cast<long>(need));
    auto sorted = slots;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) throw Error("duplicate operand");
    return slots;
}

const std::vector<Gate>& aligned_mpmct(int controls) {
    static std::mutex mu;
    static std::map<int, std::unique_ptr<std::vector<Gate>>> cache;
    const auto& raw = mpmct_template(controls);
    std::lock_guard<std::mutex> lock(mu);
    auto& slot = cache[controls];
    if (!slot) {
        detail::TAligner al(static_cast<std::size_t>(controls + 1 + mpmct_ancillas(controls)));
        for (const auto& g : raw) al.push(g);
        slot = std::make_unique<std::vector<Gate>>(al.finish());
    }
    return *slot;
}

std::vector<Gate> wrap(const Gate& gate, const std::vector<Gate>& tpl, const std::vector<int>& slots) {
    const int c = static_cast<int>(gate.controls().size());
    std::vector<Gate> out;
    for (int i = 0; i < c; ++i)
        if (!gate.polarity[i]) out.push_back(Gate::x(gate.qubits[i]));
    for (const auto& g : tpl) {
        Gate r = g;
        for (int& q : r.qubits) q = slots[q];
        out.push_back(std::move(r));
    }
    for (int i = 0; i < c; ++i)
        if (!gate.polarity[i]) out.push_back(Gate::x(gate.qubits[i]));
    return out;
}

}  // namespace

std::vector<Gate> decompose_mpmct(const Gate& gate, std::span<const int> ancillas) {
    auto slots = mpmct_slots(gate, ancillas);
    return wrap(gate, aligned_mpmct(static_cast<int>(gate.controls().size())), slots);
}

std::vector<Gate> detail::mpmct_fragment(const Gate& gate, std::span<const int> ancillas) {
    auto slots = mpmct_slots(gate, ancillas);
    return wrap(gate, mpmct_template(static_cast<int>(gate.controls().size())), slots);
}

}  // namespace qram
