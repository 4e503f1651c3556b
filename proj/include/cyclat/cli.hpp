#pragma once

#include <ostream>

namespace cyclat {

/// Exit codes of the command-line front end.
enum ExitCode : int {
  kExitOk = 0,
  kExitInvalidInput = 1,
  kExitNotConverged = 2,
  kExitVerifyFailed = 3,
};

/// Entry point of the `cyclat` tool: subcommands solve, analyze, table and
/// verify. Data goes to `out` (or --output-path), diagnostics to `err`.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace cyclat
