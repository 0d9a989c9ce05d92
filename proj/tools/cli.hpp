#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace lieprelim::cli {

enum ExitCode : int { kPass = 0, kFailure = 1, kInputError = 2, kNotSubalgebra = 3 };

struct RunConfig {
  std::string command;
  std::string format = "text";  // text | latex | json
  std::uint64_t seed = 20120101;
  double tolerance = 1e-9;
};

// Parses argv, runs the subcommand and returns the exit code.  LIE_PRELIM_SEED
// overrides --seed.  The seed in use is logged on `err`.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace lieprelim::cli
