#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace fracspec::app {

enum ExitCode { kOk = 0, kFailure = 1, kValidation = 2, kInconclusive = 3 };

/// Runs the command line (without the program name) and returns the exit code.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace fracspec::app
