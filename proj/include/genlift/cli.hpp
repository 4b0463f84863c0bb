#pragma once

#include <ostream>

namespace genlift::cli {

enum ExitCode : int {
  kPass = 0,
  kClaimFailed = 1,
  kBudget = 2,
  kOverflow = 3,
  kUsage = 64,
  kParse = 65,
  kInternal = 70,
};

/// The genlift command line. Reports go to `out` (or --output), diagnostics
/// to `err`.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace genlift::cli
