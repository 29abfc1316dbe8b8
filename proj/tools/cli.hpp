#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace qram::cli {

enum ExitCode { kOk = 0, kUsage = 1, kVerifyFailed = 2 };

// `args` excludes the program name. The config file comes from --config or,
// failing that, the QRAM_CONFIG environment variable.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace qram::cli
