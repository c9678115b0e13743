#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace hhlab {

enum ExitCode : int { kOk = 0, kCheckFailed = 1, kInputError = 2, kBudgetExceeded = 3 };

// Runs one command line (argv[0] is the program name); reports go to out,
// diagnostics to err.
int run(const std::vector<std::string>& argv, std::ostream& out, std::ostream& err);

}  // namespace hhlab
