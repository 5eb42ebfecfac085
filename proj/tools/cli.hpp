#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace cbundle::cli {

/// Exit codes: 0 success, 1 internal error, 2 usage or precondition error,
/// 3 inadmissible surface.
enum ExitCode : int { kOk = 0, kInternal = 1, kUsage = 2, kInadmissible = 3 };

/// Runs one command line (without the program name). Everything that would
/// go to stdout is written to `out`; diagnostics go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err,
        bool write_manifest = true);

}  // namespace cbundle::cli
