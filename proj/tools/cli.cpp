#include "cli.hpp"

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <set>
#include <sstream>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "config.hpp"
#include "plot.hpp"
#include "qram/verify.hpp"
#include "suite.hpp"
#include "sweep.hpp"

namespace qram::cli {

namespace {

struct FamilyFlags {
    std::string family;
    int n = 0;
    int q = -1;
    int k = -1;
    std::int64_t lambda = -1;
    std::int64_t b = 1;
    std::string variant = "td1";
    std::string source = "auto";
    bool relaxed = false;
    bool complement = false;
    bool prepare_parity = false;
    std::string addresses;
    std::int64_t seed = -1;

    FamilyConfig config() const {
        FamilyConfig c;
        c.family = parse_family(family);
        c.n = n;
        c.q = q;
        c.k = k;
        c.lambda = lambda;
        c.b = b;
        c.variant = parse_variant(variant);
        c.relaxed = relaxed;
        c.complement = complement;
        c.prepare_parity = prepare_parity;
        return c;
    }

    // Explicit memory from --addresses or --seed; random memories default to
    // a half-full q = n - 1 when q is not given.
    std::optional<MemorySpec> memory(FamilyConfig& c) const {
        if (!addresses.empty() && seed >= 0) throw Error("--addresses and --seed are mutually exclusive");
        std::optional<MemorySpec> mem;
        if (!addresses.empty()) {
            std::ifstream f(addresses);
            if (!f) throw Error("cannot open memory file '" + addresses + "'");
            std::stringstream ss;
            ss << f.rdbuf();
            mem = parse_memory(ss.str());
        } else if (seed >= 0) {
            if (c.q < 0) c.q = c.n - 1;
            mem = random_memory(c.n, c.q, static_cast<std::uint64_t>(seed));
        }
        if (mem) {
            if (c.n == 0) c.n = mem->n;
            if (c.q < 0) c.q = mem->q();
        }
        return mem;
    }
};

struct CostFlags {
    double p_in = 1e-4, p_g = 1e-5, cycle_ns = 200, eps = 0.01;

    SurfaceCodeParams params() const {
        SurfaceCodeParams p;
        p.p_in = p_in;
        p.p_g = p_g;
        p.cycle_ns = cycle_ns;
        p.eps = eps;
        p.validate();
        return p;
    }
};

class Cli {
public:
    Cli(std::ostream& out, std::ostream& err) : out_(out), err_(err), app_("qRAM circuit synthesis, resource counts and cost estimates", "qram") {
        app_.option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
        app_.require_subcommand(1);
        app_.fallthrough();
        app_.add_option("--config", config_path_, "key = value config file (default: $QRAM_CONFIG)");
        app_.add_option("--profile", profile_, "config section to apply on top of the global keys");
        setup_count();
        setup_estimate();
        setup_generate();
        setup_sweep();
        setup_plot();
        setup_verify();
    }

    int run(std::vector<std::string> args) {
        try {
            inject_config(args);
            std::reverse(args.begin(), args.end());
            app_.parse(args);
        } catch (const CLI::CallForHelp& e) {
            out_ << app_.help();
            return kOk;
        } catch (const CLI::CallForAllHelp&) {
            out_ << app_.help("", CLI::AppFormatMode::All);
            return kOk;
        } catch (const CLI::ParseError& e) {
            err_ << "error: " << e.what() << "\n";
            return kUsage;
        } catch (const Error& e) {
            err_ << "error: " << e.what() << "\n";
            return kUsage;
        }
        try {
            return action_();
        } catch (const std::exception& e) {
            err_ << "error: " << e.what() << "\n";
            return kUsage;
        }
    }

private:
    void family_options(CLI::App* s, FamilyFlags& f) {
        s->add_option("--family", f.family, "circuit family")->required();
        s->add_option("-n", f.n, "address bits");
        s->add_option("-q", f.q, "log2 of the number of 1-cells");
        s->add_option("-k", f.k, "hybrid top-tier width");
        s->add_option("--lambda", f.lambda, "SelectSwap output copies");
        s->add_option("-b", f.b, "SelectSwap word size");
        s->add_option("--variant", f.variant, "Toffoli decomposition: td1, td2, td3");
        s->add_option("--source", f.source, "count source: auto, formula, builder");
        s->add_option("--addresses", f.addresses, "memory file (n=<bits> header, one address per line)");
        s->add_option("--seed", f.seed, "random memory seed");
        flag(s, "--relaxed", f.relaxed, "allow small instances with unlowered MPMCTs");
        flag(s, "--complement", f.complement, "large-depth: match the 0-cells and flip the output");
        flag(s, "--prepare-parity", f.prepare_parity, "emit even-parity register preparation");
    }

    void cost_options(CLI::App* s, CostFlags& c) {
        s->add_option("--pin", c.p_in, "magic-state injection error");
        s->add_option("--pg", c.p_g, "physical gate error");
        s->add_option("--cycle-ns", c.cycle_ns, "surface code cycle time in ns");
        s->add_option("--eps", c.eps, "total failure budget");
    }

    void flag(CLI::App* s, const std::string& name, bool& v, const std::string& help) {
        s->add_flag(name, v, help);
        flags_.insert(name);
    }

    void setup_count() {
        auto* s = app_.add_subcommand("count", "logical resource counts for one configuration");
        family_options(s, count_);
        s->add_option("--format", format_, "table or csv")->check(CLI::IsMember({"table", "csv"}));
        s->callback([this] { action_ = [this] { return cmd_count(false); }; });
    }

    void setup_estimate() {
        auto* s = app_.add_subcommand("estimate", "surface-code physical estimate for one configuration");
        family_options(s, estimate_);
        cost_options(s, cost_);
        s->add_option("--format", format_, "table or csv")->check(CLI::IsMember({"table", "csv"}));
        s->callback([this] { action_ = [this] { return cmd_count(true); }; });
    }

    void setup_generate() {
        auto* s = app_.add_subcommand("generate", "emit a circuit file");
        family_options(s, generate_);
        flag(s, "--lower", lower_, "lower to Clifford+T");
        s->add_option("-o,--out", out_path_, "output file (default: stdout)");
        s->callback([this] { action_ = [this] { return cmd_generate(); }; });
    }

    void setup_sweep() {
        auto* s = app_.add_subcommand("sweep", "CSV over a parameter grid");
        s->add_option("--families", families_, "comma-separated families")->required();
        s->add_option("-n", sweep_n_, "address bits: 15, 15..36 or 30,35")->required();
        s->add_option("--q-mode", q_mode_, "half-full or range; -q gives an explicit list")
            ->check(CLI::IsMember({"half-full", "range"}));
        s->add_option("-q", sweep_q_, "explicit q list");
        s->add_option("--k-mode", k_mode_, "all (every valid k); -k gives an explicit list")
            ->check(CLI::IsMember({"all"}));
        s->add_option("-k", sweep_k_, "explicit k list");
        s->add_option("--lambda", sweep_lambda_, "SelectSwap lambda list (default: T-count optimum)");
        s->add_option("-b", sweep_b_, "SelectSwap word size");
        s->add_option("--variant", sweep_variant_, "Toffoli decomposition: td1, td2, td3");
        s->add_option("--source", sweep_source_, "count source: auto, formula, builder");
        s->add_option("--threads", threads_, "worker threads (default: hardware)");
        s->add_option("--csv", csv_path_, "output CSV (default: stdout)");
        cost_options(s, sweep_cost_);
        s->callback([this] { action_ = [this] { return cmd_sweep(); }; });
    }

    void setup_plot() {
        auto* s = app_.add_subcommand("plot", "SVG line chart from a sweep CSV");
        s->add_option("--in,--csv", csv_path_, "input CSV")->required();
        s->add_option("--x", plot_.x, "x column")->required();
        s->add_option("--y", plot_.y, "y column")->required();
        s->add_option("--series", plot_.series, "column splitting the lines");
        s->add_option("--title", plot_.title, "chart title");
        flag(s, "--logx", plot_.logx, "log-10 x axis");
        flag(s, "--logy", plot_.logy, "log-10 y axis");
        s->add_option("--svg", svg_path_, "output SVG (default: stdout)");
        s->callback([this] { action_ = [this] { return cmd_plot(); }; });
    }

    void setup_verify() {
        auto* s = app_.add_subcommand("verify", "run the functional oracle suite");
        s->add_option("--max-n", suite_.max_n, "largest address width checked exhaustively");
        s->add_option("--seeds", suite_.seeds, "random memories per (n, q)");
        flag(s, "--mutate", suite_.mutate, "test mode: flip one gate per query circuit");
        s->callback([this] { action_ = [this] { return cmd_verify(); }; });
    }

    // Config keys become flags placed before the user's own, so the
    // command line wins under the take-last policy.
    void inject_config(std::vector<std::string>& args) {
        std::string path, profile;
        for (std::size_t i = 0; i < args.size(); ++i) {
            for (auto [name, dst] : {std::pair{"--config", &path}, std::pair{"--profile", &profile}}) {
                const std::string key(name);
                if (args[i] == key && i + 1 < args.size()) *dst = args[i + 1];
                if (args[i].rfind(key + "=", 0) == 0) *dst = args[i].substr(key.size() + 1);
            }
        }
        if (path.empty())
            if (const char* env = std::getenv(kConfigEnv)) path = env;
        if (path.empty()) {
            if (!profile.empty()) throw Error("--profile given without a config file");
            return;
        }
        CLI::App* sub = nullptr;
        std::size_t pos = 0;
        for (; pos < args.size() && !sub; ++pos) {
            if (args[pos] == "--config" || args[pos] == "--profile") {
                ++pos;
                continue;
            }
            for (auto* s : app_.get_subcommands({}))
                if (s->get_name() == args[pos]) sub = s;
        }
        if (!sub) return;  // let the parser report the missing subcommand
        std::vector<std::string> injected;
        for (const auto& e : ConfigFile::load(path).entries(profile)) {
            if (e.key == "config" || e.key == "profile")
                throw Error(path + " line " + std::to_string(e.line) + ": '" + e.key + "' cannot be set from a config file");
            // Single letters name short options (-n) unless a long one exists (--x).
            auto spelled = [&](CLI::App* s) -> std::string {
                if (s->get_option_no_throw("--" + e.key)) return "--" + e.key;
                if (e.key.size() == 1 && s->get_option_no_throw("-" + e.key)) return "-" + e.key;
                return {};
            };
            bool known = false;
            for (auto* s : app_.get_subcommands({})) known = known || !spelled(s).empty();
            if (!known) throw Error(path + " line " + std::to_string(e.line) + ": unknown key '" + e.key + "'");
            const std::string name = spelled(sub);
            if (name.empty()) continue;
            if (flags_.count(name)) {
                if (e.value == "true" || e.value == "1" || e.value == "yes") injected.push_back(name);
                else if (e.value != "false" && e.value != "0" && e.value != "no")
                    throw Error(path + " line " + std::to_string(e.line) + ": '" + e.key + "' expects true or false");
                continue;
            }
            injected.push_back(name);
            injected.push_back(e.value);
        }
        args.insert(args.begin() + static_cast<std::ptrdiff_t>(pos), injected.begin(), injected.end());
    }

    void emit(const std::string& text, const std::string& path) {
        if (path.empty() || path == "-") {
            out_ << text;
            return;
        }
        std::ofstream f(path);
        if (!f) throw Error("cannot write '" + path + "'");
        f << text;
    }

    int cmd_count(bool estimate) {
        const FamilyFlags& ff = estimate ? estimate_ : count_;
        FamilyConfig c = ff.config();
        const auto mem = ff.memory(c);
        const auto source = parse_source(ff.source);
        if (is_selectswap(c.family) && c.lambda < 1 && c.n >= 1 && c.n <= 62) {
            const auto mode = c.family == Family::SelectSwapClean ? SelectSwapMode::Clean : SelectSwapMode::Dirty;
            c.lambda = optimal_lambda(std::int64_t{1} << c.n, c.b, mode).first;
        }
        if (estimate && is_selectswap(c.family))
            throw Error("SelectSwap bounds carry no depth; a physical estimate needs a buildable family");
        const Row row = evaluate(c, source, estimate ? cost_.params() : SurfaceCodeParams{}, estimate,
                                 mem ? &*mem : nullptr);
        const std::string header(csv_header());
        if (format_ == "csv") {
            out_ << header << "\n" << csv_row(row) << "\n";
        } else {
            auto names = split(header);
            auto values = split(csv_row(row));
            const std::size_t cols = estimate ? names.size() : 12;
            std::string h, v;
            for (std::size_t i = 0; i < cols; ++i) {
                const std::size_t w = std::max(names[i].size(), values[i].size()) + 2;
                h += fmt::format("{:<{}}", names[i], w);
                v += fmt::format("{:<{}}", values[i].empty() ? "-" : values[i], w);
            }
            out_ << h << "\n" << v << "\n";
        }
        if (row.bound_model) out_ << "note: asymptotic model (SelectSwap bound: N_Q, T_c and T_d only)\n";
        if (row.estimate && row.estimate->stalled) out_ << "note: T layers wait on magic-state supply\n";
        return kOk;
    }

    int cmd_generate() {
        FamilyConfig c = generate_.config();
        const auto mem = generate_.memory(c);
        if (!mem) throw Error("generate needs --addresses or --seed");
        emit(write_circuit(build_circuit(c, *mem, lower_)), out_path_);
        return kOk;
    }

    int cmd_sweep() {
        SweepSpec spec;
        for (const auto& name : split(families_)) spec.families.push_back(parse_family(name));
        spec.ns = parse_int_list(sweep_n_);
        spec.q_mode = q_mode_ == "range" ? QMode::Range : QMode::HalfFull;
        if (!sweep_q_.empty()) {
            spec.q_mode = QMode::List;
            spec.qs = parse_int_list(sweep_q_);
        }
        if (!sweep_k_.empty()) {
            spec.k_mode = KMode::List;
            spec.ks = parse_int_list(sweep_k_);
        }
        if (!sweep_lambda_.empty())
            for (int l : parse_int_list(sweep_lambda_)) spec.lambdas.push_back(l);
        spec.b = sweep_b_;
        spec.variant = parse_variant(sweep_variant_);
        spec.source = parse_source(sweep_source_);
        spec.params = sweep_cost_.params();
        spec.threads = threads_;
        int skipped = 0;
        const auto configs = expand_sweep(spec, &skipped);
        if (skipped) err_ << fmt::format("warning: skipped {} invalid configurations\n", skipped);
        if (configs.empty()) err_ << "warning: empty sweep\n";
        std::string csv = std::string(csv_header()) + "\n";
        for (const auto& r : run_sweep(spec, configs)) csv += csv_row(r) + "\n";
        emit(csv, csv_path_);
        return kOk;
    }

    int cmd_plot() {
        std::ifstream f(csv_path_);
        if (!f) throw Error("cannot open CSV '" + csv_path_ + "'");
        std::stringstream ss;
        ss << f.rdbuf();
        emit(render_svg(parse_csv(ss.str()), plot_), svg_path_);
        return kOk;
    }

    int cmd_verify() { return run_verify_suite(suite_, out_) ? kOk : kVerifyFailed; }

    static std::vector<std::string> split(const std::string& s) {
        std::vector<std::string> out;
        std::string item;
        std::istringstream in(s);
        while (std::getline(in, item, ',')) out.push_back(item);
        if (!s.empty() && s.back() == ',') out.emplace_back();
        return out;
    }

    std::ostream& out_;
    std::ostream& err_;
    CLI::App app_;
    std::set<std::string> flags_;
    std::function<int()> action_;

    std::string config_path_, profile_;
    FamilyFlags count_, estimate_, generate_;
    CostFlags cost_, sweep_cost_;
    std::string format_ = "table";
    bool lower_ = false;
    std::string out_path_;

    std::string families_, sweep_n_, q_mode_ = "half-full", sweep_q_, k_mode_ = "all", sweep_k_, sweep_lambda_;
    std::int64_t sweep_b_ = 1;
    std::string sweep_variant_ = "td1", sweep_source_ = "auto";
    int threads_ = 0;
    std::string csv_path_;

    PlotSpec plot_;
    std::string svg_path_;
    SuiteOptions suite_;
};

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    Cli cli(out, err);
    return cli.run(args);
}

}  // namespace qram::cli
