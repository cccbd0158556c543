#pragma once

#include <ostream>

namespace hcsig {

// Exit codes of the command-line tool.
enum ExitStatus : int {
  kExitConsistent = 0,
  kExitUsage = 1,
  kExitSignaling = 2,
  kExitInternal = 3,
};

// Entry point of the `hcsig` tool; reports go to `out`, diagnostics to `err`.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace hcsig
