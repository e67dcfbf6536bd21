#pragma once

#include <iosfwd>

namespace maxstable {

/// Exit codes of the command-line tool.
enum ExitCode : int {
  kExitOk = 0,
  kExitIo = 1,
  kExitUsage = 2,
  kExitUnclassifiable = 3,
  kExitVerificationFailed = 4,
};

/// Entry point of the `maxstable` tool, separated from main() for testing.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace maxstable
