#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace lozi {

enum ExitCode : int { kExitSuccess = 0, kExitUsage = 1, kExitRefuted = 2, kExitIndeterminate = 3 };

/// Runs one verb. `args` excludes the program name. The JSON report goes to
/// `out` (or --out), a one-line summary and diagnostics to `err`.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace lozi
