#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace warpsgk::cli {

/// Exit codes: 0 every verdict holds (or matches its expectation), 1 some
/// verdict fails, 2 usage or input error.
inline constexpr int kExitOk = 0;
inline constexpr int kExitFails = 1;
inline constexpr int kExitUsage = 2;

/// Runs one command line (args[0] is the program name) and writes the
/// report to `out`, diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace warpsgk::cli
