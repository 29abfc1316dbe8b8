#include <cmath>
#include <numeric>

#include "qram/verify.hpp"

namespace qram {

namespace {

using i64 = std::int64_t;

const Register& role_register(const Circuit& c, RegisterRole role) {
    for (const auto& r : c.registers())
        if (r.role == role) return r;
    throw Error("circuit has no " + std::string(role_name(role)) + " register");
}

std::vector<bool> address_input(const Circuit& c, const Register& addr, std::uint64_t x) {
    std::vector<bool> bits(static_cast<std::size_t>(c.num_qubits()), false);
    for (int i = 0; i < addr.size; ++i) bits[static_cast<std::size_t>(addr[i])] = (x >> (addr.size - 1 - i)) & 1;
    return bits;
}

}  // namespace

QueryReport check_query_semantics(const Circuit& circuit, const MemorySpec& mem) {
    const Register& addr = role_register(circuit, RegisterRole::Address);
    const Register& out = role_register(circuit, RegisterRole::Output);
    if (addr.size != mem.n)
        throw Error("address register has " + std::to_string(addr.size) + " qubits, memory has n=" +
                    std::to_string(mem.n));
    if (mem.n > 16) throw Error("exhaustive query check limited to n <= 16");
    QueryReport report;
    report.n = mem.n;
    for (std::uint64_t x = 0; x < (std::uint64_t{1} << mem.n); ++x) {
        const auto in = address_input(circuit, addr, x);
        const auto res = simulate_classical(circuit, in);
        ++report.checked;
        const bool want = mem.contains(x);
        if (res[static_cast<std::size_t>(out[0])] != want) {
            report.failures.push_back({x, "output " + std::to_string(!want) + ", expected " + std::to_string(want)});
            continue;
        }
        for (const auto& r : circuit.registers()) {
            if (r.role == RegisterRole::Output) continue;
            int weight = 0;
            bool same = true;
            for (int i = 0; i < r.size; ++i) {
                const auto q = static_cast<std::size_t>(r[i]);
                weight += res[q];
                same = same && res[q] == in[q];
            }
            const bool ok = r.role == RegisterRole::ParityRegister ? weight % 2 == 0 : same;
            if (!ok) {
                report.failures.push_back({x, "register '" + r.name + "' not restored"});
                break;
            }
        }
    }
    return report;
}

QueryReport check_query_semantics(const FamilyConfig& config, const MemorySpec& mem) {
    return check_query_semantics(build_circuit(config, mem, false), mem);
}

Circuit mutate_gate(const Circuit& circuit, std::size_t index) {
    if (index >= circuit.gates().size()) throw Error("mutation index out of range");
    std::vector<Gate> gates;
    gates.reserve(circuit.gates().size() + 2);
    for (std::size_t i = 0; i < circuit.gates().size(); ++i) {
        const Gate& g = circuit.gates()[i];
        if (i != index) {
            gates.push_back(g);
            continue;
        }
        switch (g.kind) {
            case GateKind::X: break;
            case GateKind::CNOT:
                gates.push_back(Gate::x(g.qubits[0]));
                gates.push_back(g);
                gates.push_back(Gate::x(g.qubits[0]));
                break;
            case GateKind::TOFFOLI:
                gates.push_back(Gate::mpmct({g.qubits[0], g.qubits[1]}, {false, true}, g.qubits[2]));
                break;
            case GateKind::MPMCT: {
                Gate m = g;
                m.polarity[0] = !m.polarity[0];
                gates.push_back(std::move(m));
                break;
            }
            default: throw Error("cannot mutate " + std::string(gate_name(g.kind)));
        }
    }
    return Circuit(circuit.num_qubits(), circuit.registers(), std::move(gates));
}

std::size_t default_mutation_site(const Circuit& circuit) {
    const auto& g = circuit.gates();
    for (std::size_t i = 0; i < g.size(); ++i)
        if (g[i].kind == GateKind::TOFFOLI || g[i].kind == GateKind::MPMCT) return i;
    throw Error("circuit has no TOFFOLI or MPMCT to mutate");
}

double superposition_query_error(const Circuit& circuit, const MemorySpec& mem,
                                 const std::vector<std::uint64_t>& addresses) {
    if (addresses.empty()) throw Error("no addresses to superpose");
    const Register& addr = role_register(circuit, RegisterRole::Address);
    const Register& out = role_register(circuit, RegisterRole::Output);
    StateVector in = StateVector::basis(circuit.num_qubits(), 0);
    in.amps[0] = 0;
    StateVector want = in;
    const double amp = 1 / std::sqrt(static_cast<double>(addresses.size()));
    for (auto x : addresses) {
        std::uint64_t idx = 0;
        for (int i = 0; i < addr.size; ++i)
            if ((x >> (addr.size - 1 - i)) & 1) idx |= in.bit(addr[i]);
        in.amps[idx] += amp;
        want.amps[mem.contains(x) ? idx | in.bit(out[0]) : idx] += amp;
    }
    const auto got = simulate_state(circuit, in);
    double dev = 0;
    for (std::size_t i = 0; i < got.amps.size(); ++i) dev = std::max(dev, std::abs(got.amps[i] - want.amps[i]));
    return dev;
}

double check_decomposition_unitary(const DecompositionSpec& spec) {
    std::vector<int> controls;
    std::vector<bool> polarity;
    int ancillas = 0;
    if (spec.kind == GateKind::TOFFOLI) {
        controls = {0, 1};
        polarity = {true, true};
        ancillas = toffoli_ancillas(spec.variant);
    } else if (spec.kind == GateKind::MPMCT) {
        polarity = spec.polarity;
        controls.resize(polarity.size());
        std::iota(controls.begin(), controls.end(), 0);
        ancillas = mpmct_ancillas(static_cast<int>(controls.size()));
    } else {
        throw Error("decomposition check covers TOFFOLI and MPMCT only");
    }
    const int c = static_cast<int>(controls.size()), m = c + 1 + ancillas;
    if (m > 13) throw Error("decomposition check limited to 13 qubits, needs " + std::to_string(m));
    std::vector<int> anc(static_cast<std::size_t>(ancillas));
    std::iota(anc.begin(), anc.end(), c + 1);
    const auto gates = spec.kind == GateKind::TOFFOLI
                           ? decompose_toffoli(spec.variant, 0, 1, 2, anc)
                           : decompose_mpmct(Gate::mpmct(controls, polarity, c), anc);
    const Circuit frag = Circuit::unannotated(m, gates);

    // Data qubits occupy the high index bits, ancillae the low ones.
    std::complex<double> phase = 0;
    double dev = 0;
    for (std::uint64_t x = 0; x < (std::uint64_t{1} << (c + 1)); ++x) {
        bool fire = true;
        for (int i = 0; i < c; ++i) fire = fire && (((x >> (c - i)) & 1) != 0) == polarity[static_cast<std::size_t>(i)];
        const std::uint64_t y = fire ? x ^ 1 : x;
        const auto out = simulate_state(frag, StateVector::basis(m, x << ancillas));
        const std::uint64_t hit = y << ancillas;
        if (x == 0) phase = out.amps[hit] / std::max(std::abs(out.amps[hit]), 1e-300);
        for (std::uint64_t i = 0; i < out.amps.size(); ++i)
            dev = std::max(dev, std::abs(out.amps[i] - (i == hit ? phase : 0.0)));
    }
    return dev;
}

std::vector<MetricCheck> check_formula_vs_builder(const FamilyConfig& config) {
    if (!has_closed_form(config) || is_selectswap(config.family))
        throw Error(std::string(family_name(config.family)) + " has no closed form to compare");
    const auto f = formula_counts(config);
    const auto b = builder_counts(config);
    std::vector<MetricCheck> out;
    auto add = [&](std::string name, i64 fv, i64 bv, CheckRule rule, i64 tol = 0) {
        bool ok = true;
        switch (rule) {
            case CheckRule::Exact: ok = fv == bv; break;
            case CheckRule::AtMost: ok = bv <= fv; break;
            case CheckRule::Within: ok = std::abs(fv - bv) <= tol; break;
            case CheckRule::Info: break;
        }
        out.push_back({std::move(name), fv, bv, rule, ok});
    };
    const i64 N = i64{1} << config.n;
    const bool bb = config.family == Family::BBSerial || config.family == Family::BBParallel;
    if (bb && config.family == Family::BBParallel) {
        // Accepted band [0.9, 1.1] x 8*2^n from n = 6 on.
        const i64 tol = config.n >= 6 ? f.qubits / 10 : f.qubits;
        add("NQ", f.qubits, b.qubits, CheckRule::Within, tol);
    } else {
        add("NQ", f.qubits, b.qubits, CheckRule::Exact);
    }
    add("D", f.depth, b.depth, CheckRule::AtMost);
    add("Tc", f.t_count, b.t_count, CheckRule::Exact);
    add("Td", f.t_depth, b.t_depth, CheckRule::AtMost);
    add("Hc", f.h_count, b.h_count, bb ? CheckRule::Info : CheckRule::Exact);
    add("CNOTc", f.cnot_count, b.cnot_count, CheckRule::Info);
    if (bb) {
        const auto tally = tally_program(build_program(config));
        add("toffoli", 3 * N - 4, tally.toffoli, CheckRule::Exact);
        add("bare_cnot", f.cnot_count - 16 * tally.toffoli, tally.cnot, CheckRule::Within, 8);
    }
    return out;
}

}  // namespace qram
