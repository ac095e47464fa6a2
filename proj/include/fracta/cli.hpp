#pragma once

// The fracta command line. Exit status: 0 pass, 1 mathematical failure,
// 2 malformed input, 3 budget exhausted or search undecided.

#include <ostream>
#include <string>
#include <vector>

namespace fracta {

/// `args` excludes the program name. Reports go to `out` as JSON (or DOT for
/// the dot subcommand); diagnostics go to `err`.
int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace fracta
