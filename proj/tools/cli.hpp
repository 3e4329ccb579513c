#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace thmm::cli {

enum ExitCode : int {
  kOk = 0,
  kInputError = 1,
  kNumericalFailure = 2,
  kAssumptionFailure = 3,
};

// Runs the command line given as argv-style strings (args[0] is the program
// name). Documents go to `out`, diagnostics to `err`.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace thmm::cli
