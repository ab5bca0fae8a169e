#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace fixdyn::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitRegression = 3;

// Runs one invocation; args excludes the program name. Results go to `out`
// (or the --out file), diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace fixdyn::cli
