#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace memsat::cli {

// Stable process exit codes.
inline constexpr int kExitOk = 0;
inline constexpr int kExitNotReached = 1;
inline constexpr int kExitInput = 2;
inline constexpr int kExitIo = 3;
inline constexpr int kExitNumeric = 4;
inline constexpr int kExitInsufficientData = 5;

/// Runs the memsat command line. args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace memsat::cli
