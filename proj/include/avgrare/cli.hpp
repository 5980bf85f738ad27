#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace avgrare {

/// Exit codes: 0 success, 1 verification failure or counterexample, 2 usage or input error.
inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitUsage = 2;

/// Runs the command line `args` (without the program name). Standard input is
/// read only when an input argument is "-".
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace avgrare
