#pragma once

#include <ostream>

namespace qel {

enum ExitCode : int { kExitOk = 0, kExitUsage = 1, kExitVerifyFailed = 2, kExitInvalidRegime = 3 };

/// Entry point of the qel command-line tool. Output goes to `out` unless
/// --output names a file; diagnostics go to `err`.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace qel
