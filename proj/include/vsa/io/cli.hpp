#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace vsa::io {

enum ExitCode : int { kSuccess = 0, kUsage = 1, kDataError = 2, kNotConverged = 3 };

/// Command-line entry point; `args` excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace vsa::io
