#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace specdim::cli {

enum ExitCode : int {
    kSuccess = 0,
    kUsage = 2,
    kInputData = 3,
    kTolerance = 4,
    kNumerical = 5,
};

/// Runs one `specdim` invocation; `args` excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace specdim::cli
