#pragma once

#include <cstdint>
#include <vector>

#include "qram/ir.hpp"

namespace qram {

struct SurfaceCodeParams {
    double p_in = 1e-4;      // magic-state injection error
    double p_g = 1e-5;       // physical gate error
    double cycle_ns = 200;   // surface code cycle time
    double eps = 0.01;       // total failure budget
    double c_i = 0;          // init cycles, on/off rule
    double c_t = 0;          // teardown cycles, on/off rule

    void validate() const;
};

struct DistillationPlan {
    int rounds = 0;
    std::vector<int> distances;    // per round
    std::vector<double> errors;    // output error per round
    std::int64_t footprint_logical = 0;  // logical qubits per factory
    double physical_per_factory = 0;
    std::int64_t latency = 0;      // cycles until the first state
    std::int64_t period = 0;       // cycles between states once pipelined

    double output_error(double p_in) const { return errors.empty() ? p_in : errors.back(); }
};

struct PhysicalEstimate {
    int distance = 0;
    DistillationPlan plan;
    std::int64_t factories = 0;
    double logical_total = 0;
    double physical_qubits = 0;
    double cycles = 0;
    double seconds = 0;
    double cost = 0;        // log2(logical_total * cycles)
    double rough_cost = 0;  // log2(N_Q * T_d)
    bool stalled = false;   // T layers wait on distillation
};

// Logical error per qubit per layer at distance d.
double logical_error(double p_g, int d);
int required_distance(double p_g, double per_op_budget);
DistillationPlan distillation_plan(double p_in, double per_t_budget, double p_g);
std::int64_t factory_count(const ResourceCounts& counts);
PhysicalEstimate estimate_physical(const ResourceCounts& counts, const SurfaceCodeParams& params = {});

double cost_metric(double logical_qubits, double cycles);
double rough_cost(const ResourceCounts& counts);

enum class OnOff { TurnOff, KeepOn };
OnOff onoff_decision(double c_a, double c_i, double c_t);

}  // namespace qram
