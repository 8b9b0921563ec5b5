#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace secrecy::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitInputError = 2;
inline constexpr int kExitNoConvergence = 3;

/// Runs the analyzer with `args` (program name excluded). Never throws.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace secrecy::cli
