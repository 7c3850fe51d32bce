#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace wsteiner {

enum ExitCode : int {
    kExitOk = 0,
    kExitUsage = 1,
    kExitInvalidInput = 2,
    kExitNoConvergence = 3,
    kExitSolverFailure = 4,
    kExitDegenerate = 5,
};

/// Maps a record status ("ok", "degenerate", or an error code name) to an exit code.
int exit_code_for(const std::string& status);

/// args excludes the program name: {"solve", "--input", "x.json"}.
int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace wsteiner
