#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace geodivp::cli {

enum ExitCode : int {
  kOk = 0,
  kUsage = 2,
  kSolverFailure = 3,
  kIoFailure = 4,
};

/// Runs one command line. `args` excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace geodivp::cli
