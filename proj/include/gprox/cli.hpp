#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace gprox::cli {

/// Exit codes shared by every subcommand.
inline constexpr int kExitOk = 0;
inline constexpr int kExitNegative = 1;  // validation failure, empty set, exhausted search, ...
inline constexpr int kExitUsage = 2;     // bad flags, unreadable or malformed instance file

/// Runs one command line (without the program name). The report goes to
/// `out`, diagnostics to `err`; the return value is the exit code.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace gprox::cli
