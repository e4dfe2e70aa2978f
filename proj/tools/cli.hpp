#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace ids::cli {

enum ExitCode : int {
  exit_ok = 0,
  exit_error = 1,
  exit_invalid_config = 2,
  exit_property_violation = 3,
  exit_solver_limit = 4,
};

// args excludes the program name. Primary output goes to `out` unless the
// command was given --out.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace ids::cli
