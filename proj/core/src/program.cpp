#include <limits>
#include <optional>

#include "qram/program.hpp"
#include "synth.hpp"

namespace qram {

std::int64_t Operand::at(std::int64_t i, std::int64_t j) const {
    std::int64_t idx = base + i;
    for (const auto& s : stairs)
        if (j >= s.j_lo && j < s.j_hi) return idx + s.offset + (j - s.j_lo) / s.width;
    return idx;
}

int Program::add_register(std::string name, RegisterRole role, std::int64_t size) {
    if (size < 0) throw Error("register '" + name + "' has negative size");
    registers.push_back({std::move(name), role, size});
    return static_cast<int>(registers.size()) - 1;
}

std::int64_t Program::qubits() const {
    std::int64_t n = 0;
    for (const auto& r : registers) n += r.size;
    return n;
}

std::int64_t Program::offset(int reg) const {
    std::int64_t n = 0;
    for (int r = 0; r < reg; ++r) n += registers[static_cast<std::size_t>(r)].size;
    return n;
}

namespace {

void tally_block(BlockTally& t, const Block& b, std::int64_t times) {
    std::int64_t n = b.count * times;
    switch (b.kind) {
        case GateKind::CNOT: t.cnot += n; break;
        case GateKind::SWAP: t.cnot += 3 * n; break;
        case GateKind::TOFFOLI: t.toffoli += n; break;
        case GateKind::MPMCT: t.mpmct += n; break;
        case GateKind::H: t.h += n; break;
        case GateKind::X:
            if (b.when) {
                n = 0;
                for (std::int64_t i = 0; i < b.count; ++i) n += b.when(i) ? 1 : 0;
                n *= times;
            }
            t.x += n;
            break;
        default: break;
    }
}

class Expander {
public:
    Expander(const Program& p, bool lower) : p_(p), lower_(lower) {
        if (p.qubits() > (std::int64_t{1} << 26)) throw Error("program too large to materialize");
        if (lower) aligner_.emplace(static_cast<std::size_t>(p.qubits()));
        for (std::size_t r = 0; r < p.registers.size(); ++r) {
            offsets_.push_back(p.offset(static_cast<int>(r)));
            const auto& d = p.registers[r];
            if (d.size > 0)
                regs_.push_back({d.name, d.role, static_cast<int>(offsets_.back()),
                                 static_cast<int>(d.size)});
        }
    }

    void block(const Block& b, std::int64_t j) {
        for (std::int64_t i = 0; i < b.count; ++i) {
            if (b.kind == GateKind::X && b.when && !b.when(i)) continue;
            const std::int64_t key = b.count > 1 ? i : j;
            std::vector<int> qs;
            for (const auto& o : b.qubits) qs.push_back(qubit(o, i, j));
            Gate g{b.kind, qs, {}};
            if (b.kind == GateKind::MPMCT)
                g.polarity = b.polarity ? b.polarity(key)
                                        : std::vector<bool>(qs.size() - 1, true);
            if (!lower_) {
                gates_.push_back(std::move(g));
                continue;
            }
            if (b.kind != GateKind::TOFFOLI && b.kind != GateKind::MPMCT) {
                aligner_->push(std::move(g));
                continue;
            }
            std::vector<int> anc;
            for (const auto& o : b.ancillas) anc.push_back(qubit(o, i, j));
            std::vector<Gate> frag;
            if (b.kind == GateKind::TOFFOLI) {
                frag = detail::toffoli_fragment(p_.variant, qs[0], qs[1], qs[2], anc);
            } else {
                const auto need = static_cast<std::size_t>(mpmct_ancillas(static_cast<int>(qs.size()) - 1));
                if (anc.size() < need) throw Error("insufficient ancillae for MPMCT");
                anc.resize(need);
                frag = detail::mpmct_fragment(g, anc);
            }
            for (auto& h : frag) aligner_->push(std::move(h));
        }
    }

    Circuit finish() {
        if (aligner_) gates_ = aligner_->finish();
        return Circuit(static_cast<int>(p_.qubits()), std::move(regs_), std::move(gates_));
    }

private:
    int qubit(const Operand& o, std::int64_t i, std::int64_t j) const {
        const auto& d = p_.registers.at(static_cast<std::size_t>(o.reg));
        const std::int64_t idx = o.at(i, j);
        if (idx < 0 || idx >= d.size)
            throw Error("operand " + std::to_string(idx) + " outside register '" + d.name + "'");
        return static_cast<int>(offsets_[static_cast<std::size_t>(o.reg)] + idx);
    }

    const Program& p_;
    bool lower_;
    std::vector<std::int64_t> offsets_;
    std::vector<Register> regs_;
    std::vector<Gate> gates_;
    std::optional<detail::TAligner> aligner_;
};

}  // namespace

BlockTally tally_program(const Program& p) {
    BlockTally t;
    for (const auto& op : p.ops) {
        if (const auto* b = std::get_if<Block>(&op)) {
            tally_block(t, *b, 1);
        } else {
            const auto& l = std::get<Loop>(op);
            for (const auto& b : l.body) tally_block(t, b, l.iterations);
        }
    }
    return t;
}

Circuit materialize(const Program& p, bool lower) {
    Expander e(p, lower);
    for (const auto& op : p.ops) {
        if (const auto* b = std::get_if<Block>(&op)) {
            e.block(*b, 0);
        } else {
            const auto& l = std::get<Loop>(op);
            for (std::int64_t j = 0; j < l.iterations; ++j)
                for (const auto& b : l.body) e.block(b, j);
        }
    }
    return e.finish();
}

}  // namespace qram
