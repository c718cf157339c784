#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace catperc {

/// Exit codes of the command-line tool.
inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitResource = 3;

/// Runs the command line `args` (without the program name). Results go to
/// `out` unless --out names a file; diagnostics go to `err`.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// "1:40" (inclusive range) or "1,2,4".
std::vector<int> parse_int_list(const std::string& text);
/// "0:1:0.05" (start:stop:step, inclusive within rounding) or "0.1,0.2".
std::vector<double> parse_grid(const std::string& text);

}  // namespace catperc
