#pragma once

#include <ostream>

namespace qram::cli {

struct SuiteOptions {
    int max_n = 6;
    int seeds = 5;
    bool mutate = false;  // plant one flipped gate in every query circuit
};

// Prints one PASS/FAIL/SKIP line per check group; returns true when all pass.
bool run_verify_suite(const SuiteOptions& opt, std::ostream& out);

}  // namespace qram::cli
