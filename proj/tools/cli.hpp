#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace potentialforge::cli {

// Exit codes. Stable across versions.
inline constexpr int kOk = 0;
inline constexpr int kInputError = 1;
inline constexpr int kSemanticFailure = 2;
inline constexpr int kSolverFailure = 3;

// Runs one command. `args` excludes the program name. Reports go to `out`
// as JSON, notes and diagnostics to `err`.
int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err);

}  // namespace potentialforge::cli
