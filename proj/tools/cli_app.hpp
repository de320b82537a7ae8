#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace rmcalc::cli {

enum ExitCode { kOk = 0, kUserError = 1, kNumericFailure = 2 };

// args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace rmcalc::cli
