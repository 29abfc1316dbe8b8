#include "suite.hpp"

#include <random>

#include <fmt/format.h>

#include "qram/verify.hpp"

namespace qram::cli {

namespace {

constexpr double kUnitaryTol = 1e-10;

struct Printer {
    std::ostream& out;
    bool ok = true;

    void line(const char* status, const std::string& what) {
        if (std::string_view(status) == "FAIL") ok = false;
        out << fmt::format("{:<5} {}\n", status, what);
    }
};

void query_checks(const SuiteOptions& opt, Printer& p) {
    for (Family f : all_families()) {
        if (is_selectswap(f)) continue;
        for (int n = 2; n <= opt.max_n; ++n) {
            const std::string name(family_name(f));
            if (uses_mpmct(f) && n < 4) {
                p.line("SKIP", fmt::format("query {} n={}: n ≥ 4 required", name, n));
                continue;
            }
            std::int64_t checked = 0;
            int failed = 0;
            for (int q = 0; q < n; ++q) {
                std::vector<int> ks{-1};
                if (is_hybrid(f)) {
                    ks.clear();
                    for (int k = 2; k <= n - 1; ++k) ks.push_back(k);
                }
                for (int k : ks)
                    for (int seed = 0; seed < opt.seeds; ++seed) {
                        FamilyConfig c;
                        c.family = f;
                        c.n = n;
                        c.q = q;
                        c.k = k;
                        c.relaxed = is_hybrid(f);
                        const auto mem = random_memory(n, q, static_cast<std::uint64_t>(seed));
                        Circuit circ = build_circuit(c, mem);
                        if (opt.mutate) circ = mutate_gate(circ, default_mutation_site(circ));
                        const auto r = check_query_semantics(circ, mem);
                        checked += r.checked;
                        if (r.ok()) continue;
                        ++failed;
                        const auto& bad = r.failures.front();
                        p.line("FAIL", fmt::format("query {} n={} q={}{} seed={}: address {}: {}", name, n, q,
                                                   k >= 0 ? fmt::format(" k={}", k) : "", seed,
                                                   format_address(bad.address, n), bad.detail));
                    }
            }
            if (failed == 0) p.line("PASS", fmt::format("query {} n={}: {} addresses", name, n, checked));
        }
    }
    // Complement build plus a trailing X on the output answers the same queries.
    for (int n = 4; n <= opt.max_n; ++n) {
        int failed = 0;
        for (int q = 0; q < n; ++q)
            for (int seed = 0; seed < opt.seeds; ++seed) {
                FamilyConfig c;
                c.family = Family::LargeDepth;
                c.n = n;
                c.q = q;
                c.complement = true;
                const auto mem = random_memory(n, q, static_cast<std::uint64_t>(seed));
                if (!check_query_semantics(c, mem).ok()) ++failed;
            }
        p.line(failed ? "FAIL" : "PASS", fmt::format("query large-depth complement n={}: {} memories failed", n, failed));
    }
}

void unitary_checks(Printer& p) {
    for (auto v : {ToffoliVariant::TD3, ToffoliVariant::TD2, ToffoliVariant::TD1}) {
        DecompositionSpec d;
        d.variant = v;
        const double dev = check_decomposition_unitary(d);
        p.line(dev < kUnitaryTol ? "PASS" : "FAIL", fmt::format("unitary toffoli {}: deviation {:.3g}", variant_name(v), dev));
    }
    std::mt19937 rng(7);
    for (int c = 4; c <= 6; ++c) {
        std::vector<std::vector<bool>> patterns = {std::vector<bool>(static_cast<std::size_t>(c), true), {}, {}};
        for (int i = 0; i < c; ++i) patterns[1].push_back(i % 2 == 0);
        for (int i = 0; i < c; ++i) patterns[2].push_back(rng() & 1);
        for (const auto& pol : patterns) {
            DecompositionSpec d;
            d.kind = GateKind::MPMCT;
            d.polarity = pol;
            std::string pat;
            for (bool b : pol) pat += b ? '+' : '-';
            const double dev = check_decomposition_unitary(d);
            p.line(dev < kUnitaryTol ? "PASS" : "FAIL", fmt::format("unitary mpmct {}: deviation {:.3g}", pat, dev));
        }
    }
}

void superposition_checks(const SuiteOptions& opt, Printer& p) {
    FamilyConfig c;
    c.family = Family::LargeWidth;
    c.n = 3;
    c.q = 1;
    c.relaxed = true;
    c.prepare_parity = true;
    double worst = 0;
    for (int seed = 0; seed < opt.seeds; ++seed) {
        const auto mem = random_memory(3, 1, static_cast<std::uint64_t>(seed));
        worst = std::max(worst, superposition_query_error(build_circuit(c, mem), mem, mem.ones));
    }
    p.line(worst < 1e-10 ? "PASS" : "FAIL",
           fmt::format("statevector large-width n=3 q=1 even-parity register: deviation {:.3g}", worst));
}

void formula_checks(const SuiteOptions& opt, Printer& p) {
    const Family fams[] = {Family::BBSerial, Family::BBParallel, Family::LargeDepth, Family::LargeWidth, Family::Hybrid};
    for (Family f : fams)
        for (int n = 4; n <= std::max(opt.max_n, 4); ++n) {
            int configs = 0, failed = 0;
            std::string first;
            const int qmax = (f == Family::BBSerial || f == Family::BBParallel) ? 1 : n;
            for (int q = 0; q < qmax; ++q) {
                std::vector<int> ks{-1};
                if (f == Family::Hybrid) {
                    ks.clear();
                    for (int k = 4; k <= n - 3 && k < q; ++k) ks.push_back(k);
                }
                for (int k : ks) {
                    FamilyConfig c;
                    c.family = f;
                    c.n = n;
                    c.q = q;
                    c.k = k;
                    ++configs;
                    for (const auto& m : check_formula_vs_builder(c))
                        if (!m.ok) {
                            if (!failed)
                                first = fmt::format(" (q={} {}: formula {} builder {})", q, m.metric, m.formula, m.builder);
                            ++failed;
                        }
                }
            }
            if (configs == 0) continue;
            p.line(failed ? "FAIL" : "PASS",
                   fmt::format("formula {} n={}: {} configs{}", family_name(f), n, configs, first));
        }
}

}  // namespace

bool run_verify_suite(const SuiteOptions& opt, std::ostream& out) {
    if (opt.max_n < 2) throw Error("--max-n must be at least 2");
    if (opt.max_n > 10) throw Error("--max-n above 10 makes exhaustive checks impractical");
    if (opt.seeds < 1) throw Error("--seeds must be at least 1");
    Printer p{out};
    query_checks(opt, p);
    unitary_checks(p);
    superposition_checks(opt, p);
    formula_checks(opt, p);
    return p.ok;
}

}  // namespace qram::cli
