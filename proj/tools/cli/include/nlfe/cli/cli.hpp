#pragma once

#include <iosfwd>

namespace nlfe::cli {

enum ExitCode : int {
    kSuccess = 0,
    kValidationFailure = 1,
    kNumericalFailure = 2,
};

/// Entry point of the `nlfe` tool. Summaries go to `out`, diagnostics to `err`.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

} // namespace nlfe::cli
