#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace caustica::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 2;     ///< bad flags, config or parameters
inline constexpr int kExitBoundary = 3;  ///< boundary-band result under --strict

/// Runs one command. `args` excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace caustica::cli
