#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace cliquepool::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailed = 1;  // validation or verification failure
inline constexpr int kExitUsage = 2;

/// Runs the command line `args` (args[0] is the program name).
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace cliquepool::cli
