#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace dasa::cli {

enum ExitCode : int {
  kOk = 0,
  kFailure = 1,
  kValidation = 2,
  kUnstable = 3,
  kPowerRatio = 4,
  kInfeasible = 5,
};

// Parses argv and runs one subcommand (analyze, optimize, sweep, simulate,
// boundary). Results go to --out or `out`; diagnostics go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);
int run(int argc, char** argv, std::ostream& out, std::ostream& err);

}  // namespace dasa::cli
