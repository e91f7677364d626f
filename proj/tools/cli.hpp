#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace empower::cli {

enum ExitCode : int {
  kOk = 0,
  kUsage = 1,
  kInputError = 2,
  kRuntimeError = 3,
};

/// Runs one command line (args[0] is the program name).  Output goes to
/// `out`, diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace empower::cli
