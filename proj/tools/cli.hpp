#pragma once

#include <ostream>

namespace sodbench::cli {

enum ExitCode : int { kSuccess = 0, kFatal = 1, kPartial = 2 };

/// Parses argv, runs the chosen subcommand and returns the process exit code.
/// Normal output goes to `out`, diagnostics and progress to `err`.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace sodbench::cli
