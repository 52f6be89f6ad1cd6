#pragma once

#include <ostream>

namespace tdho::cli {

enum ExitCode : int { kSuccess = 0, kUsage = 1, kConsistency = 2, kOracleFailure = 3 };

/// Full command-line front end; returns the process exit code.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace tdho::cli
