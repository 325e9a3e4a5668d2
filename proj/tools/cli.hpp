#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace mollify::cli {

/// Exit codes: 0 success, 1 usage or I/O error, 2 noise-dominated data,
/// 3 numerical non-convergence.
enum ExitCode : int {
  kOk = 0,
  kUsage = 1,
  kNoiseDominated = 2,
  kNonConvergence = 3,
};

/// Parses argv (including argv[0]) and runs the selected subcommand.
/// A `--config FILE` of flat `key = value` lines supplies values for any
/// flag not given on the command line.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace mollify::cli
