#pragma once

#include <iosfwd>

namespace fbj::cli {

enum ExitCode : int {
  kSuccess = 0,
  kSelftestFailed = 1,
  kUsageError = 2,
  kNumericalFailure = 3,
};

/// Entry point of the `fbj` command line. argv[0] is the program name.
/// Tables and CSV without --out go to `out`; diagnostics go to `err`.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace fbj::cli
