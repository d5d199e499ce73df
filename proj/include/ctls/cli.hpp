#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace ctls::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitIo = 2;
inline constexpr int kExitInvalidScenario = 3;
inline constexpr int kExitUsage = 64;

/// Runs one command line (args excludes the program name). Records go to
/// `out` unless --output names a file; diagnostics go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace ctls::cli
