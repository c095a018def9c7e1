#pragma once

#include <iosfwd>
#include <string>

#include "knightmagic/tour.hpp"

namespace knightmagic {

/// Exit codes of the command-line front end.
enum ExitCode : int {
  kExitOk = 0,
  kExitMismatch = 1,
  kExitUsage = 2,
  kExitAborted = 3,
};

/// Runs `knightmagic <subcommand> ...`. JSON goes to `out`, diagnostics to `err`.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

/// ASCII grid with row sums on the right and column sums underneath.
std::string render_ascii(const Tour& t);

}  // namespace knightmagic
