#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace mlwng::cli {

enum ExitCode : int {
  kOk = 0,
  kUsageError = 1,
  kRuntimeError = 2,
};

/// Runs the mlwng command line. `args` excludes the program name. Machine
/// output goes to `out`; diagnostics and progress go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace mlwng::cli
