#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace hyperpara::cli {

enum Exit { kPass = 0, kMismatch = 1, kInputError = 2 };

/// Runs one command line (without the program name); returns the exit status.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace hyperpara::cli
