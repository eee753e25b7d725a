#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace tensoreq::cli {

// Process exit statuses.
enum ExitCode : int {
  kOk = 0,
  kIoFailure = 1,
  kUsage = 2,
  kInconsistent = 3,
  kIterationCap = 4,
  kBreakdown = 5,
};

/// Runs the command line `args` (without the program name), writing normal
/// output to `out` and diagnostics to `err`. Returns the exit status.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace tensoreq::cli
