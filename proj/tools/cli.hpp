#ifndef DDCASIMIR_TOOLS_CLI_HPP
#define DDCASIMIR_TOOLS_CLI_HPP

#include <iosfwd>
#include <string>
#include <vector>

#include "ddcasimir/sweeps.hpp"

namespace ddcasimir::cli {

/// Exit codes of `run`.
enum ExitCode : int {
  kOk = 0,
  kNumericFailure = 1,  // quadrature failure, undefined ratio, ... (JSON on stderr)
  kUsage = 2,           // argument parse failure (usage on stderr)
  kVerifyFailed = 3,    // `verify` found a residual above threshold
};

/// Parses "param:min:max:count[:log|:linear]".
AxisSpec parse_axis(const std::string& text);

/// Comma-separated list of axis specs.
std::vector<AxisSpec> parse_grid(const std::string& text);

/// Companion contour path: "dir/name.csv" -> "dir/name_contours.csv".
std::string contour_path(const std::string& out_path);

/// Runs one subcommand. args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace ddcasimir::cli

#endif  // DDCASIMIR_TOOLS_CLI_HPP
