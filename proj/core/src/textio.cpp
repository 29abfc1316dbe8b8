#include <charconv>
#include <sstream>

#include "qram/ir.hpp"

namespace qram {

std::string write_circuit(const Circuit& circuit) {
    std::ostringstream out;
    out << ".qubits " << circuit.num_qubits() << '\n';
    for (const auto& r : circuit.registers())
        out << ".reg " << r.name << ' ' << role_name(r.role) << ' ' << r.first << ' ' << r.last()
            << '\n';
    for (const auto& g : circuit.gates()) {
        out << gate_name(g.kind);
        if (g.kind == GateKind::MPMCT) {
            out << ' ';
            for (bool p : g.polarity) out << (p ? '+' : '-');
            for (int c : g.controls()) out << ' ' << c;
            out << " -> " << g.target();
        } else {
            for (int q : g.qubits) out << ' ' << q;
        }
        out << '\n';
    }
    return out.str();
}

namespace {

[[noreturn]] void fail(std::size_t line, const std::string& reason) {
    throw Error("line " + std::to_string(line) + ": " + reason);
}

std::vector<std::string_view> split(std::string_view s) {
    std::vector<std::string_view> out;
    std::size_t i = 0;
    while (i < s.size()) {
        while (i < s.size() && (s[i] == ' ' || s[i] == '\t' || s[i] == '\r')) ++i;
        std::size_t j = i;
        while (j < s.size() && s[j] != ' ' && s[j] != '\t' && s[j] != '\r') ++j;
        if (j > i) out.push_back(s.substr(i, j - i));
        i = j;
    }
    return out;
}

int parse_int(std::string_view tok, std::size_t line) {
    int v = 0;
    auto [p, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (ec != std::errc() || p != tok.data() + tok.size())
        fail(line, "expected integer, got '" + std::string(tok) + "'");
    return v;
}

GateKind gate_kind(std::string_view tok, std::size_t line) {
    for (int k = 0; k <= static_cast<int>(GateKind::MPMCT); ++k)
        if (gate_name(static_cast<GateKind>(k)) == tok) return static_cast<GateKind>(k);
    fail(line, "unknown gate '" + std::string(tok) + "'");
}

}  // namespace

Circuit parse_circuit(std::string_view text) {
    int num_qubits = -1;
    std::vector<Register> regs;
    std::vector<Gate> gates;
    std::size_t line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        std::size_t end = text.find('\n', pos);
        if (end == std::string_view::npos) end = text.size();
        std::string_view line = text.substr(pos, end - pos);
        pos = end + 1;
        ++line_no;
        if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
        auto tok = split(line);
        if (tok.empty()) {
            if (end == text.size()) break;
            continue;
        }
        if (tok[0] == ".qubits") {
            if (tok.size() != 2) fail(line_no, ".qubits takes one argument");
            if (num_qubits >= 0) fail(line_no, "duplicate .qubits header");
            num_qubits = parse_int(tok[1], line_no);
            if (num_qubits < 0) fail(line_no, "negative qubit count");
            continue;
        }
        if (num_qubits < 0) fail(line_no, "missing .qubits header");
        auto index = [&](std::string_view t) {
            int q = parse_int(t, line_no);
            if (q < 0 || q >= num_qubits)
                fail(line_no, "index " + std::string(t) + " out of range");
            return q;
        };
        if (tok[0] == ".reg") {
            if (tok.size() != 5) fail(line_no, ".reg expects name role first last");
            Register r;
            r.name = std::string(tok[1]);
            try {
                r.role = parse_role(tok[2]);
            } catch (const Error& e) {
                fail(line_no, e.what());
            }
            r.first = index(tok[3]);
            int last = index(tok[4]);
            if (last < r.first) fail(line_no, "register last precedes first");
            r.size = last - r.first + 1;
            regs.push_back(std::move(r));
            continue;
        }
        Gate g;
        g.kind = gate_kind(tok[0], line_no);
        if (g.kind == GateKind::MPMCT) {
            if (tok.size() < 4 || tok[tok.size() - 2] != "->")
                fail(line_no, "mpmct expects '<polarity> c1 .. ck -> t'");
            for (char ch : tok[1]) {
                if (ch != '+' && ch != '-') fail(line_no, "bad polarity character");
                g.polarity.push_back(ch == '+');
            }
            for (std::size_t i = 2; i + 2 < tok.size(); ++i) g.qubits.push_back(index(tok[i]));
            if (g.polarity.size() != g.qubits.size()) fail(line_no, "polarity length mismatch");
            g.qubits.push_back(index(tok.back()));
        } else {
            for (std::size_t i = 1; i < tok.size(); ++i) g.qubits.push_back(index(tok[i]));
        }
        try {
            g.validate();
        } catch (const Error& e) {
            fail(line_no, e.what());
        }
        gates.push_back(std::move(g));
        if (end == text.size()) break;
    }
    if (num_qubits < 0) throw Error("line " + std::to_string(line_no) + ": missing .qubits header");
    if (regs.empty()) return Circuit::unannotated(num_qubits, std::move(gates));
    try {
        return Circuit(num_qubits, std::move(regs), std::move(gates));
    } catch (const Error& e) {
        throw Error(std::string("registers: ") + e.what());
    }
}

}  // namespace qram
