#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace muskat::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitRegime = 3;
inline constexpr int kExitNumerical = 4;

// Runs one invocation; `args` excludes the program name. Structured output
// goes to `out`, diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace muskat::cli
