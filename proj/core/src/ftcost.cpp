#include <algorithm>
#include <cmath>

#include "qram/ftcost.hpp"

namespace qram {

namespace {

constexpr double kThreshold = 1e-2;
constexpr int kMaxDistance = 20001;
constexpr int kMaxRounds = 8;

// p <= budget, tolerant to rounding at exact powers of ten.
bool within(double p, double budget) { return p <= budget * (1 + 1e-9); }

double physical_per_logical(int d) { return 2.0 * (d + 1) * (d + 1); }

}  // namespace

void SurfaceCodeParams::validate() const {
    auto prob = [](double p, const char* name) {
        if (!(p > 0 && p < 1)) throw Error(std::string(name) + " must be in (0, 1)");
    };
    prob(p_in, "p_in");
    prob(p_g, "p_g");
    prob(eps, "eps");
    if (!(cycle_ns > 0)) throw Error("cycle time must be positive");
    if (c_i < 0 || c_t < 0) throw Error("init/teardown cycles must be non-negative");
}

double logical_error(double p_g, int d) { return 0.1 * std::pow(100 * p_g, (d + 1) / 2); }

int required_distance(double p_g, double per_op_budget) {
    if (!(p_g > 0 && p_g < 1)) throw Error("p_g must be in (0, 1)");
    if (p_g >= kThreshold) throw Error("p_g = " + std::to_string(p_g) + " is not below threshold 1e-2");
    if (!(per_op_budget > 0 && per_op_budget < 1)) throw Error("per-operation budget must be in (0, 1)");
    for (int d = 1; d <= kMaxDistance; d += 2)
        if (within(logical_error(p_g, d), per_op_budget)) return d;
    throw Error("no code distance up to " + std::to_string(kMaxDistance) + " meets the budget");
}

DistillationPlan distillation_plan(double p_in, double per_t_budget, double p_g) {
    if (!(p_in > 0 && p_in < 1)) throw Error("p_in must be in (0, 1)");
    if (!(per_t_budget > 0 && per_t_budget < 1)) throw Error("per-T budget must be in (0, 1)");
    DistillationPlan plan;
    double err = p_in;
    while (!within(err, per_t_budget)) {
        const double next = 35 * err * err * err;
        if (next >= err || plan.rounds == kMaxRounds)
            throw Error("15-to-1 distillation cannot reach the per-T budget from p_in");
        err = next;
        ++plan.rounds;
        const int d = required_distance(p_g, std::max(err, per_t_budget));
        plan.distances.push_back(d);
        plan.errors.push_back(err);
        plan.footprint_logical += 16;
        plan.physical_per_factory += 16 * physical_per_logical(d);
        plan.latency += 10 * d;
        plan.period = std::max<std::int64_t>(plan.period, 10 * d);
    }
    return plan;
}

std::int64_t factory_count(const ResourceCounts& c) {
    if (c.t_count == 0) return 0;
    if (c.t_depth <= 0) throw Error("T-depth must be positive when T-count is");
    return (c.t_count + c.t_depth - 1) / c.t_depth;
}

PhysicalEstimate estimate_physical(const ResourceCounts& c, const SurfaceCodeParams& params) {
    params.validate();
    if (c.qubits <= 0 || c.depth <= 0)
        throw Error("counts are incomplete (qubits and depth must be modeled)");
    PhysicalEstimate e;
    const auto nq = static_cast<double>(c.qubits), depth = static_cast<double>(c.depth);
    e.distance = required_distance(params.p_g, params.eps / (2 * nq * depth));
    double base = depth * e.distance;
    double supply = 0;
    if (c.t_count > 0) {
        e.plan = distillation_plan(params.p_in, params.eps / (2 * static_cast<double>(c.t_count)), params.p_g);
        e.factories = factory_count(c);
        // One state per factory per T layer; rounds pipeline at the slowest round.
        if (e.plan.rounds > 0)
            supply = static_cast<double>(e.plan.latency) +
                     static_cast<double>(c.t_depth - 1) * static_cast<double>(e.plan.period);
    }
    const auto f = static_cast<double>(e.factories);
    e.logical_total = nq + f * static_cast<double>(e.plan.footprint_logical);
    e.physical_qubits = nq * physical_per_logical(e.distance) + f * e.plan.physical_per_factory;
    e.stalled = supply > base;
    e.cycles = std::max(base, supply);
    e.seconds = e.cycles * params.cycle_ns * 1e-9;
    e.cost = cost_metric(e.logical_total, e.cycles);
    e.rough_cost = c.t_depth > 0 ? rough_cost(c) : 0;
    return e;
}

double cost_metric(double logical_qubits, double cycles) {
    if (!(logical_qubits > 0) || !(cycles > 0)) throw Error("cost metric needs positive arguments");
    return std::log2(logical_qubits) + std::log2(cycles);
}

double rough_cost(const ResourceCounts& c) {
    if (c.qubits <= 0 || c.t_depth <= 0) throw Error("rough cost needs positive N_Q and T_d");
    return std::log2(static_cast<double>(c.qubits)) + std::log2(static_cast<double>(c.t_depth));
}

OnOff onoff_decision(double c_a, double c_i, double c_t) {
    return c_a > c_i + c_t ? OnOff::TurnOff : OnOff::KeepOn;
}

}  // namespace qram
