// Count-only evaluation of a Program. Each register keeps its ASAP frontier
// as a run of affine pieces, so a parallel block costs one envelope per
// template gate regardless of how many instances it has. A loop is simulated
// until its layers advance by a constant shift per iteration; the remaining
// iterations are then extrapolated, after checking that no streamed operand
// could start binding later on.

#include <algorithm>
#include <limits>
#include <map>
#include <numeric>

#include "qram/program.hpp"

namespace qram {

namespace {

using i64 = std::int64_t;

struct Piece {
    i64 lo = 0, hi = 0;  // [lo, hi)
    i64 a = 0, s = 0;    // value(i) = a + s * (i - lo)

    i64 at(i64 i) const { return a + s * (i - lo); }
    i64 len() const { return hi - lo; }
};

using Pieces = std::vector<Piece>;

// Appends p to out, merging it into the previous piece when both lie on one line.
void append(Pieces& out, Piece p) {
    if (p.len() <= 0) return;
    if (p.len() == 1) p.s = 0;
    if (!out.empty()) {
        Piece& b = out.back();
        i64 s = b.len() > 1 ? b.s : (p.len() > 1 ? p.s : p.a - b.a);
        bool ok = (b.len() == 1 || b.s == s) && (p.len() == 1 || p.s == s) &&
                  b.a + s * b.len() == p.a;
        if (ok) {
            b.s = s;
            b.hi = p.hi;
            return;
        }
    }
    out.push_back(p);
}

class Frontier {
public:
    explicit Frontier(i64 size) {
        if (size > 0) p_.push_back({0, size, 0, 0});
    }

    i64 at(i64 idx) const { return p_[find(idx)].at(idx); }

    // Local pieces over [0, count) for elements base .. base + count - 1.
    Pieces read(i64 base, i64 count) const {
        Pieces out;
        for (auto it = p_.begin() + static_cast<long>(find(base)); it != p_.end() && it->lo < base + count; ++it) {
            const i64 lo = std::max(it->lo, base), hi = std::min(it->hi, base + count);
            append(out, {lo - base, hi - base, it->at(lo), it->s});
        }
        return out;
    }

    void write(i64 base, const Pieces& local) {
        if (local.empty()) return;
        const i64 end = base + local.back().hi;
        const std::size_t first = find(base), last = find(end - 1);
        const std::size_t from = first > 0 ? first - 1 : first;
        const std::size_t to = std::min(last + 2, p_.size());
        Pieces repl;
        for (std::size_t k = from; k < first; ++k) append(repl, p_[k]);
        const Piece head = p_[first], tail = p_[last];
        if (head.lo < base) append(repl, {head.lo, base, head.a, head.s});
        for (const auto& q : local) append(repl, {q.lo + base, q.hi + base, q.a, q.s});
        if (tail.hi > end) append(repl, {end, tail.hi, tail.at(end), tail.s});
        for (std::size_t k = last + 1; k < to; ++k) append(repl, p_[k]);
        const auto pos = p_.erase(p_.begin() + static_cast<long>(from), p_.begin() + static_cast<long>(to));
        p_.insert(pos, repl.begin(), repl.end());
    }

private:
    std::size_t find(i64 idx) const {
        auto it = std::upper_bound(p_.begin(), p_.end(), idx,
                                   [](i64 v, const Piece& p) { return v < p.lo; });
        return static_cast<std::size_t>(it - p_.begin()) - 1;
    }

    Pieces p_;
};

// Pointwise maximum of two piece lists covering the same range.
Pieces upper(const Pieces& x, const Pieces& y) {
    Pieces out;
    std::size_t i = 0, j = 0;
    i64 lo = 0;
    while (i < x.size() && j < y.size()) {
        const i64 hi = std::min(x[i].hi, y[j].hi);
        const Piece f{lo, hi, x[i].at(lo), x[i].s};
        const Piece g{lo, hi, y[j].at(lo), y[j].s};
        const i64 d0 = f.a - g.a, ds = f.s - g.s;
        const i64 d1 = d0 + ds * (hi - 1 - lo);
        if (d0 >= 0 && d1 >= 0) {
            append(out, f);
        } else if (d0 <= 0 && d1 <= 0) {
            append(out, g);
        } else if (d0 > 0) {  // f on top first, g takes over
            const i64 cut = lo + d0 / -ds + 1;
            append(out, {lo, cut, f.a, f.s});
            append(out, {cut, hi, g.at(cut), g.s});
        } else {
            const i64 cut = lo + (-d0 + ds - 1) / ds;
            append(out, {lo, cut, g.a, g.s});
            append(out, {cut, hi, f.at(cut), f.s});
        }
        lo = hi;
        if (x[i].hi == hi) ++i;
        if (y[j].hi == hi) ++j;
    }
    return out;
}

// Set of layer indices holding T gates, kept as arithmetic progressions.
class LayerSet {
public:
    void add(i64 a, i64 s, i64 n) {
        if (n <= 0) return;
        if (n == 1) s = 0;
        if (s < 0) {
            a += s * (n - 1);
            s = -s;
        }
        aps_.push_back({a, s, n});
    }

    // Exact union size: every progression is split by residue modulo the lcm
    // of all steps, leaving intervals on a common grid.
    i64 size() const {
        i64 l = 1;
        for (const auto& p : aps_)
            if (p.s > 0) {
                l = std::lcm(l, p.s);
                if (l > (i64{1} << 24)) throw Error("T-layer set too irregular for count-only evaluation");
            }
        struct Run {
            i64 residue, first, last;  // quotient coordinates, inclusive
            bool operator<(const Run& o) const {
                return residue != o.residue ? residue < o.residue : first < o.first;
            }
        };
        auto fdiv = [](i64 a, i64 b) { return a / b - ((a % b != 0) && ((a < 0) != (b < 0))); };
        std::vector<Run> runs;
        for (const auto& p : aps_) {
            if (p.s == 0) {
                runs.push_back({((p.a % l) + l) % l, fdiv(p.a, l), fdiv(p.a, l)});
                continue;
            }
            const i64 period = l / p.s;
            for (i64 u = 0; u < std::min(period, p.n); ++u) {
                const i64 first = p.a + p.s * u;
                const i64 cnt = (p.n - u + period - 1) / period;
                const i64 r = ((first % l) + l) % l;
                const i64 q = fdiv(first, l);
                runs.push_back({r, q, q + cnt - 1});
            }
            if (runs.size() > 50'000'000) throw Error("T-layer set too large for count-only evaluation");
        }
        std::sort(runs.begin(), runs.end());
        i64 total = 0;
        for (std::size_t i = 0; i < runs.size();) {
            i64 r = runs[i].residue, first = runs[i].first, last = runs[i].last;
            for (++i; i < runs.size() && runs[i].residue == r && runs[i].first <= last + 1; ++i)
                last = std::max(last, runs[i].last);
            total += last - first + 1;
        }
        return total;
    }

private:
    struct AP {
        i64 a, s, n;
    };
    std::vector<AP> aps_;
};

// A T run is one joint gate: under in-context alignment its T gates share
// the layer after the latest of their wires.
struct Prim {
    GateKind kind;
    std::vector<int> slots;
    i64 weight = 1;  // gates represented
};

// Template of a block as primitive gates over slots: qubits first, then
// ancillae. X gates are dropped since they never enter any count.
std::vector<Prim> expand(const Block& b, ToffoliVariant variant) {
    std::vector<Prim> out;
    const int nq = static_cast<int>(b.qubits.size());
    const std::vector<Gate>* tpl = nullptr;
    int need = 0;
    if (b.kind == GateKind::TOFFOLI) {
        tpl = &toffoli_template(variant);
        need = toffoli_ancillas(variant);
    } else if (b.kind == GateKind::MPMCT) {
        tpl = &mpmct_template(nq - 1);
        need = mpmct_ancillas(nq - 1);
    }
    if (tpl) {
        if (static_cast<int>(b.ancillas.size()) < need)
            throw Error("insufficient ancillae: need " + std::to_string(need) + ", have " +
                        std::to_string(b.ancillas.size()));
        bool in_run = false;
        for (const auto& g : *tpl) {
            if (g.kind == GateKind::X) {
                in_run = false;
                continue;
            }
            if (!is_t_gate(g.kind)) {
                in_run = false;
                out.push_back({g.kind, g.qubits});
                continue;
            }
            const int q = g.qubits[0];
            if (in_run && std::find(out.back().slots.begin(), out.back().slots.end(), q) == out.back().slots.end()) {
                out.back().slots.push_back(q);
                ++out.back().weight;
            } else {
                out.push_back({GateKind::T, {q}});
                in_run = true;
            }
        }
        return out;
    }
    if (b.kind == GateKind::X) return out;
    std::vector<int> slots(static_cast<std::size_t>(nq));
    std::iota(slots.begin(), slots.end(), 0);
    out.push_back({b.kind, slots});
    return out;
}

const Operand& slot_operand(const Block& b, int slot) {
    const auto nq = static_cast<int>(b.qubits.size());
    return slot < nq ? b.qubits[static_cast<std::size_t>(slot)]
                     : b.ancillas[static_cast<std::size_t>(slot - nq)];
}

struct Tally {
    i64 t = 0, h = 0, cnot = 0;

    void add(GateKind k, i64 n) {
        if (is_t_gate(k)) t += n;
        if (k == GateKind::H) h += n;
        if (k == GateKind::CNOT) cnot += n;
        if (k == GateKind::SWAP) cnot += 3 * n;
    }
};

bool operator==(const Operand& a, const Operand& b) {
    if (a.reg != b.reg || a.base != b.base || a.stairs.size() != b.stairs.size()) return false;
    for (std::size_t i = 0; i < a.stairs.size(); ++i) {
        const auto &x = a.stairs[i], &y = b.stairs[i];
        if (x.j_lo != y.j_lo || x.j_hi != y.j_hi || x.offset != y.offset || x.width != y.width)
            return false;
    }
    return true;
}

class Engine {
public:
    explicit Engine(const Program& p) : p_(p) {
        for (const auto& r : p.registers) f_.emplace_back(r.size);
    }

    ResourceCounts run() {
        for (const auto& op : p_.ops) {
            if (const auto* b = std::get_if<Block>(&op))
                block(*b);
            else
                loop(std::get<Loop>(op));
        }
        ResourceCounts rc;
        rc.qubits = p_.qubits();
        rc.depth = depth_;
        rc.t_count = tally_.t;
        rc.t_depth = tlayers_.size();
        rc.h_count = tally_.h;
        rc.cnot_count = tally_.cnot;
        return rc;
    }

private:
    void check_range(const Operand& o, i64 count) const {
        const auto& d = p_.registers.at(static_cast<std::size_t>(o.reg));
        if (o.base < 0 || o.base + count > d.size)
            throw Error("operand range outside register '" + d.name + "'");
    }

    void block(const Block& b) {
        const i64 n = b.count;
        if (n <= 0) return;
        std::vector<const Operand*> all;
        for (const auto& o : b.qubits) all.push_back(&o);
        for (const auto& o : b.ancillas) all.push_back(&o);
        for (std::size_t i = 0; i < all.size(); ++i) {
            check_range(*all[i], n);
            for (std::size_t j = 0; j < i; ++j)
                if (all[i]->reg == all[j]->reg && all[i]->base < all[j]->base + n &&
                    all[j]->base < all[i]->base + n)
                    throw Error("overlapping operand ranges in parallel block");
        }
        for (const auto& g : expand(b, p_.variant)) {
            Pieces env;
            for (int s : g.slots) {
                const Operand& o = slot_operand(b, s);
                Pieces r = f_[static_cast<std::size_t>(o.reg)].read(o.base, n);
                env = env.empty() ? std::move(r) : upper(env, r);
            }
            for (auto& p : env) {
                p.a += 1;
                depth_ = std::max({depth_, p.at(p.lo), p.at(p.hi - 1)});
                if (is_t_gate(g.kind)) tlayers_.add(p.a, p.s, p.len());
            }
            for (int s : g.slots) {
                const Operand& o = slot_operand(b, s);
                f_[static_cast<std::size_t>(o.reg)].write(o.base, env);
            }
            tally_.add(g.kind, n * g.weight);
        }
    }

    struct Flat {
        GateKind kind;
        i64 weight;
        std::vector<int> ops;  // indices into the loop's distinct operands
    };

    struct Stream {
        bool streamed = false;
        int first_use = -1, last_use = -1;  // prim indices
    };

    void loop(const Loop& l) {
        const i64 J = l.iterations;
        if (J <= 0) return;
        std::vector<Operand> ops;
        std::vector<Flat> prims;
        auto intern = [&](const Operand& o) {
            for (std::size_t i = 0; i < ops.size(); ++i)
                if (ops[i] == o) return static_cast<int>(i);
            ops.push_back(o);
            return static_cast<int>(ops.size()) - 1;
        };
        for (const auto& b : l.body) {
            if (b.count != 1) throw Error("loop body blocks must have a single instance");
            for (const auto& g : expand(b, p_.variant)) {
                Flat fl{g.kind, g.weight, {}};
                for (int s : g.slots) fl.ops.push_back(intern(slot_operand(b, s)));
                prims.push_back(std::move(fl));
            }
        }
        const std::size_t P = prims.size();
        std::vector<Stream> info(ops.size());
        for (std::size_t g = 0; g < P; ++g)
            for (int o : prims[g].ops) {
                auto& s = info[static_cast<std::size_t>(o)];
                if (s.first_use < 0) s.first_use = static_cast<int>(g);
                s.last_use = static_cast<int>(g);
            }
        validate_loop(ops, info, J);

        std::map<std::pair<int, i64>, i64> local;
        auto value = [&](int o, i64 j) {
            const auto& op = ops[static_cast<std::size_t>(o)];
            const i64 idx = op.at(0, j);
            auto it = local.find({op.reg, idx});
            return it != local.end() ? it->second : f_[static_cast<std::size_t>(op.reg)].at(idx);
        };

        std::vector<std::vector<i64>> rows;  // last three iterations
        Tally per_iter;
        for (const auto& g : prims) per_iter.add(g.kind, g.weight);
        constexpr i64 kMaxSimulated = 200'000;
        i64 j = 0;
        i64 next_attempt = 2;
        for (; j < J; ++j) {
            std::vector<i64> row(P);
            for (std::size_t g = 0; g < P; ++g) {
                i64 L = 0;
                for (int o : prims[g].ops) L = std::max(L, value(o, j));
                ++L;
                row[g] = L;
                for (int o : prims[g].ops) {
                    const auto& op = ops[static_cast<std::size_t>(o)];
                    local[{op.reg, op.at(0, j)}] = L;
                }
                if (is_t_gate(prims[g].kind)) tlayers_.add(L, 0, 1);
                depth_ = std::max(depth_, L);
            }
            rows.push_back(std::move(row));
            if (rows.size() > 3) rows.erase(rows.begin());
            if (j + 1 < J && j >= next_attempt && rows.size() == 3 &&
                try_extrapolate(ops, info, prims, rows, j, J, local)) {
                add_tally(per_iter, J);
                return;
            }
            if (j >= kMaxSimulated)
                throw Error("count-only evaluation could not extrapolate a loop of " +
                            std::to_string(J) + " iterations");
        }
        for (const auto& [key, v] : local)
            f_[static_cast<std::size_t>(key.first)].write(key.second, {{0, 1, v, 0}});
        add_tally(per_iter, J);
    }

    void add_tally(const Tally& t, i64 times) {
        tally_.t += t.t * times;
        tally_.h += t.h * times;
        tally_.cnot += t.cnot * times;
    }

    void validate_loop(const std::vector<Operand>& ops, std::vector<Stream>& info, i64 J) const {
        struct Range {
            int reg;
            i64 lo, hi;  // inclusive
        };
        std::vector<Range> ranges;
        for (std::size_t i = 0; i < ops.size(); ++i) {
            const auto& o = ops[i];
            const auto& d = p_.registers.at(static_cast<std::size_t>(o.reg));
            if (o.stairs.empty()) {
                if (o.base < 0 || o.base >= d.size)
                    throw Error("operand outside register '" + d.name + "'");
                ranges.push_back({o.reg, o.base, o.base});
                continue;
            }
            info[i].streamed = true;
            i64 expect = 0, prev_hi = std::numeric_limits<i64>::min();
            for (const auto& s : o.stairs) {
                if (s.j_lo != expect || s.j_hi <= s.j_lo || s.width < 1)
                    throw Error("loop operand stairs must tile the iteration range");
                expect = s.j_hi;
                const i64 lo = o.base + s.offset, hi = lo + (s.j_hi - 1 - s.j_lo) / s.width;
                if (lo <= prev_hi) throw Error("loop operand stairs must be increasing");
                if (lo < 0 || hi >= d.size) throw Error("operand outside register '" + d.name + "'");
                prev_hi = hi;
                ranges.push_back({o.reg, lo, hi});
            }
            if (expect != J) throw Error("loop operand stairs must tile the iteration range");
        }
        // Distinct operands may not share qubits; the per-operand ranges of one
        // streamed operand are already disjoint.
        std::vector<std::size_t> owner;
        for (std::size_t i = 0, k = 0; i < ops.size(); ++i) {
            const std::size_t n = ops[i].stairs.empty() ? 1 : ops[i].stairs.size();
            for (std::size_t t = 0; t < n; ++t, ++k) owner.push_back(i);
        }
        for (std::size_t a = 0; a < ranges.size(); ++a)
            for (std::size_t b = 0; b < a; ++b)
                if (owner[a] != owner[b] && ranges[a].reg == ranges[b].reg &&
                    ranges[a].lo <= ranges[b].hi && ranges[b].lo <= ranges[a].hi)
                    throw Error("loop operands overlap; count-only evaluation unsupported");
    }

    // Called after iteration js. Succeeds when the last three rows advance by
    // a common shift and every later read of a streamed operand stays below
    // the layer its gate reaches anyway.
    bool try_extrapolate(const std::vector<Operand>& ops, const std::vector<Stream>& info,
                         const std::vector<Flat>& prims, const std::vector<std::vector<i64>>& rows,
                         i64 js, i64 J, std::map<std::pair<int, i64>, i64>& local) {
        const auto& r0 = rows[0];
        const auto& r1 = rows[1];
        const auto& r2 = rows[2];
        const i64 delta = r2[0] - r1[0];
        if (delta <= 0) return false;
        for (std::size_t g = 0; g < r2.size(); ++g)
            if (r2[g] - r1[g] != delta || r1[g] - r0[g] != delta) return false;

        // Layer of each gate at iteration js ignoring the first read of
        // streamed operands must already equal its actual layer.
        auto value_at_js = [&](int o) {
            const auto& op = ops[static_cast<std::size_t>(o)];
            return local.at({op.reg, op.at(0, js)});
        };
        std::vector<i64> after(ops.size());
        for (std::size_t o = 0; o < ops.size(); ++o) after[o] = value_at_js(static_cast<int>(o));
        // Replay iteration js's gate inputs from the final row values.
        std::vector<i64> cur(ops.size(), std::numeric_limits<i64>::min());
        for (std::size_t o = 0; o < ops.size(); ++o)
            if (!info[o].streamed) cur[o] = after[o] - delta;  // fixed: state after js-1
        for (std::size_t g = 0; g < prims.size(); ++g) {
            i64 L = 0;
            for (int o : prims[g].ops) {
                const auto& s = info[static_cast<std::size_t>(o)];
                if (s.streamed && s.first_use == static_cast<int>(g)) continue;
                L = std::max(L, cur[static_cast<std::size_t>(o)]);
            }
            if (L + 1 != r2[g]) return false;
            for (int o : prims[g].ops) cur[static_cast<std::size_t>(o)] = r2[g];
        }

        auto layer = [&](int g, i64 j) { return r2[static_cast<std::size_t>(g)] + (j - js) * delta; };
        for (std::size_t o = 0; o < ops.size(); ++o) {
            if (!info[o].streamed) continue;
            const auto& op = ops[o];
            const int gf = info[o].first_use, gl = info[o].last_use;
            const auto& fr = f_[static_cast<std::size_t>(op.reg)];
            for (const auto& s : op.stairs) {
                if (s.j_hi - 1 <= js) continue;
                // Continuation reads: the same qubit as the previous iteration.
                if (s.width > 1 && layer(gl, js) - delta > layer(gf, js) - 1) return false;
                // First reads of fresh qubits: idx with first iteration > js.
                const i64 lo = op.base + s.offset;
                const i64 hi = lo + (s.j_hi - 1 - s.j_lo) / s.width;
                i64 first_idx = lo;
                if (s.j_lo <= js) first_idx = lo + (js - s.j_lo) / s.width + 1;
                if (first_idx > hi) continue;
                const Pieces pieces = fr.read(first_idx, hi - first_idx + 1);
                for (const auto& p : pieces)
                    for (i64 e : {p.lo, p.hi - 1}) {
                        const i64 idx = first_idx + e;
                        const i64 jf = s.j_lo + (idx - lo) * s.width;
                        if (p.at(e) > layer(gf, jf) - 1) return false;
                    }
            }
        }

        // Commit: T layers, depth, final frontiers.
        const i64 rest = J - 1 - js;
        for (std::size_t g = 0; g < prims.size(); ++g) {
            if (is_t_gate(prims[g].kind)) tlayers_.add(r2[g] + delta, delta, rest);
            depth_ = std::max(depth_, layer(static_cast<int>(g), J - 1));
        }
        for (std::size_t o = 0; o < ops.size(); ++o) {
            const auto& op = ops[o];
            if (!info[o].streamed) {
                local[{op.reg, op.base}] = after[o] + rest * delta;
                continue;
            }
            const int gl = info[o].last_use;
            for (const auto& s : op.stairs) {
                if (s.j_hi - 1 <= js) continue;
                const i64 lo = op.base + s.offset;
                const i64 hi = lo + (s.j_hi - 1 - s.j_lo) / s.width;
                auto last_j = [&](i64 x) {
                    return std::min(s.j_lo + (x - lo + 1) * s.width - 1, s.j_hi - 1);
                };
                // Qubits whose last iteration was simulated are final in `local`.
                i64 start = s.j_lo <= js ? lo + (js - s.j_lo) / s.width : lo;
                if (last_j(start) <= js) ++start;
                if (start > hi) continue;
                Pieces out;
                // Below hi every qubit sees a full group of `width` iterations.
                append(out, {0, hi - start, layer(gl, last_j(start)), s.width * delta});
                append(out, {hi - start, hi - start + 1, layer(gl, s.j_hi - 1), 0});
                pending_.push_back({op.reg, start, std::move(out)});
            }
        }
        for (const auto& [key, v] : local)
            f_[static_cast<std::size_t>(key.first)].write(key.second, {{0, 1, v, 0}});
        for (auto& w : pending_)
            f_[static_cast<std::size_t>(w.reg)].write(w.base, w.pieces);
        pending_.clear();
        return true;
    }

    struct Write {
        int reg;
        i64 base;
        Pieces pieces;
    };

    const Program& p_;
    std::vector<Frontier> f_;
    LayerSet tlayers_;
    Tally tally_;
    i64 depth_ = 0;
    std::vector<Write> pending_;
};

}  // namespace

ResourceCounts count_program(const Program& p) { return Engine(p).run(); }

}  // namespace qram
