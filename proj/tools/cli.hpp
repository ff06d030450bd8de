#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace twc::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitViolation = 1;
inline constexpr int kExitUsage = 2;

/// Runs the command line `args` (program name excluded). Records go to
/// `out` unless --out names a file; summaries and diagnostics go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace twc::cli
