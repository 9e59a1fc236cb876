#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace aimsolve {

// Exit codes: 0 solved or all fixtures passed, 1 input error, 2 no
// termination, 3 a table fixture or a verification failed.
enum ExitCode { kExitOk = 0, kExitInput = 1, kExitNoTermination = 2, kExitFailed = 3 };

// Runs the command line (args excludes the program name).
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace aimsolve
