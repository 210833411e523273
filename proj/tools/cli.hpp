#pragma once

#include <iosfwd>

namespace kinsl {

/// Exit codes of the command-line tool.
enum ExitCode : int { exit_ok = 0, exit_solver = 1, exit_usage = 2, exit_unstable = 3 };

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace kinsl
