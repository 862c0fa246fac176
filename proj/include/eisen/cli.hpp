#pragma once

#include <ostream>

namespace eisen {

enum ExitCode : int {
  exit_ok = 0,
  exit_parse = 2,
  exit_evaluation = 3,
  exit_output = 4,
  exit_assertion = 5,
};

/// Subcommands eval, scan, amplifier, verify and budget. JSON results and
/// error records go to `out`, diagnostics to `err`.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace eisen
