#include "sweep.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <exception>
#include <mutex>
#include <thread>
#include <tuple>

#include <fmt/format.h>

namespace qram::cli {

Source parse_source(std::string_view name) {
    if (name == "auto") return Source::Auto;
    if (name == "formula") return Source::Formula;
    if (name == "builder") return Source::Builder;
    throw Error("unknown source '" + std::string(name) + "' (expected auto, formula or builder)");
}

ResourceCounts evaluate_counts(const FamilyConfig& config, Source source, const MemorySpec* mem) {
    const bool formula = source == Source::Formula || (source == Source::Auto && has_closed_form(config));
    if (formula) return formula_counts(config);
    return mem ? builder_counts(config, *mem) : builder_counts(config);
}

Row evaluate(const FamilyConfig& config, Source source, const SurfaceCodeParams& params, bool with_estimate,
             const MemorySpec* mem) {
    Row r;
    r.config = config;
    r.counts = evaluate_counts(config, source, mem);
    r.bound_model = is_selectswap(config.family);
    if (with_estimate && !r.bound_model) r.estimate = estimate_physical(r.counts, params);
    return r;
}

std::string_view csv_header() {
    return "family,n,q,k,lambda,NQ,D,Tc,Td,Hc,CNOTc,Tw,distance,rounds,factories,logical_total,"
           "physical_qubits,cycles,seconds,cost,rough_cost";
}

std::string csv_row(const Row& row) {
    const auto& c = row.config;
    const auto& k = row.counts;
    auto opt = [](bool present, auto v) { return present ? fmt::format("{}", v) : std::string(); };
    auto real = [](double v) { return fmt::format("{:.10g}", v); };
    std::vector<std::string> f = {
        std::string(family_name(c.family)),
        fmt::format("{}", c.n),
        opt(c.q >= 0, c.q),
        opt(c.k >= 0, c.k),
        opt(c.lambda >= 1, c.lambda),
        fmt::format("{}", k.qubits),
        opt(!row.bound_model, k.depth),
        fmt::format("{}", k.t_count),
        fmt::format("{}", k.t_depth),
        opt(!row.bound_model, k.h_count),
        opt(!row.bound_model, k.cnot_count),
        k.t_depth > 0 ? real(k.t_width()) : std::string(),
    };
    if (const auto& e = row.estimate) {
        f.push_back(fmt::format("{}", e->distance));
        f.push_back(fmt::format("{}", e->plan.rounds));
        f.push_back(fmt::format("{}", e->factories));
        f.push_back(real(e->logical_total));
        f.push_back(real(e->physical_qubits));
        f.push_back(real(e->cycles));
        f.push_back(real(e->seconds));
        f.push_back(real(e->cost));
        f.push_back(k.t_depth > 0 ? real(e->rough_cost) : std::string());
    } else {
        f.resize(f.size() + 8);
        f.push_back(k.qubits > 0 && k.t_depth > 0 ? real(rough_cost(k)) : std::string());
    }
    std::string out;
    for (std::size_t i = 0; i < f.size(); ++i) out += (i ? "," : "") + f[i];
    return out;
}

std::vector<int> parse_int_list(std::string_view text) {
    auto number = [&](std::string_view s) {
        int v = 0;
        const auto* end = s.data() + s.size();
        auto [p, ec] = std::from_chars(s.data(), end, v);
        if (ec != std::errc() || p != end || s.empty())
            throw Error("invalid integer list '" + std::string(text) + "'");
        return v;
    };
    std::vector<int> out;
    std::size_t start = 0;
    while (start <= text.size()) {
        auto comma = text.find(',', start);
        if (comma == std::string_view::npos) comma = text.size();
        const auto item = text.substr(start, comma - start);
        if (const auto dots = item.find(".."); dots != std::string_view::npos) {
            const int lo = number(item.substr(0, dots)), hi = number(item.substr(dots + 2));
            if (hi < lo) throw Error("empty range '" + std::string(item) + "'");
            for (int v = lo; v <= hi; ++v) out.push_back(v);
        } else {
            out.push_back(number(item));
        }
        start = comma + 1;
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

std::vector<FamilyConfig> expand_sweep(const SweepSpec& spec, int* skipped) {
    std::vector<FamilyConfig> out;
    int bad = 0;
    auto keep = [&](const FamilyConfig& c) {
        try {
            validate(c);
            out.push_back(c);
        } catch (const Error&) {
            ++bad;
        }
    };
    for (Family f : spec.families) {
        for (int n : spec.ns) {
            FamilyConfig base;
            base.family = f;
            base.n = n;
            base.variant = spec.variant;
            base.b = spec.b;
            if (is_selectswap(f)) {
                const auto mode = f == Family::SelectSwapClean ? SelectSwapMode::Clean : SelectSwapMode::Dirty;
                if (n > 62) {
                    ++bad;
                    continue;
                }
                auto lambdas = spec.lambdas;
                if (lambdas.empty()) lambdas = {optimal_lambda(std::int64_t{1} << n, spec.b, mode).first};
                for (auto l : lambdas) {
                    base.lambda = l;
                    keep(base);
                }
                continue;
            }
            std::vector<int> qs;
            switch (spec.q_mode) {
                case QMode::HalfFull: qs = {n - 1}; break;
                case QMode::Range:
                    for (int q = 0; q < n; ++q) qs.push_back(q);
                    break;
                case QMode::List:
                    for (int q : spec.qs)
                        if (q >= 0 && q < n) qs.push_back(q);
                    break;
            }
            for (int q : qs) {
                base.q = q;
                if (!is_hybrid(f)) {
                    keep(base);
                    continue;
                }
                std::vector<int> ks = spec.ks;
                if (spec.k_mode == KMode::All) {
                    ks.clear();
                    for (int k = 4; k <= n - 3; ++k) ks.push_back(k);
                }
                for (int k : ks) {
                    base.k = k;
                    keep(base);
                }
            }
        }
    }
    std::stable_sort(out.begin(), out.end(), [](const FamilyConfig& a, const FamilyConfig& b) {
        return std::make_tuple(family_name(a.family), a.n, a.q, a.k, a.lambda) <
               std::make_tuple(family_name(b.family), b.n, b.q, b.k, b.lambda);
    });
    if (skipped) *skipped = bad;
    return out;
}

std::vector<Row> run_sweep(const SweepSpec& spec, const std::vector<FamilyConfig>& configs) {
    std::vector<Row> rows(configs.size());
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex mu;
    auto work = [&] {
        for (std::size_t i; (i = next++) < configs.size();) {
            try {
                rows[i] = evaluate(configs[i], spec.source, spec.params, true);
            } catch (...) {
                std::lock_guard<std::mutex> lock(mu);
                if (!failure) failure = std::current_exception();
                next = configs.size();
            }
        }
    };
    unsigned threads = spec.threads > 0 ? static_cast<unsigned>(spec.threads) : std::thread::hardware_concurrency();
    threads = std::clamp<unsigned>(threads, 1, static_cast<unsigned>(std::max<std::size_t>(configs.size(), 1)));
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(work);
    for (auto& t : pool) t.join();
    if (failure) std::rethrow_exception(failure);
    return rows;
}

}  // namespace qram::cli
