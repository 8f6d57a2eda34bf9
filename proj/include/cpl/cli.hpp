#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace cpl {

// Exit statuses of the command-line driver.
inline constexpr int kExitOk = 0;
inline constexpr int kExitNegative = 1;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitResource = 3;

/// Environment variable overriding the brute-force atom cap.
inline constexpr const char* kAtomCapEnv = "CPL_ATOM_CAP";

/// Runs one invocation; `args` excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace cpl
