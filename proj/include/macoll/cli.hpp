#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace macoll::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitSolverFailure = 1;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitIo = 3;

/// Runs one command. `args` excludes the program name.
///
///   solve     --degree N [--start taylor|cold-chain|file] [--coeffs-out PATH]
///   sweep     [--degrees a:step:b] [--start taylor|cold-chain|file]
///   stability --degree N | --degrees a:step:b [--check boundary|laplacian]
///
/// Returns 0 on success, 1 when the minimizer fails (outputs written so
/// far are flushed), 2 on invalid arguments and 3 when an output or input
/// file cannot be opened.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

int run(int argc, const char* const* argv);

}  // namespace macoll::cli
