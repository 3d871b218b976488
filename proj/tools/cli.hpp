#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace stlmask::cli {

// Exit codes.
inline constexpr int kOk = 0;
inline constexpr int kUsage = 2;     // bad arguments, input or config
inline constexpr int kDiverged = 3;  // optimization left the finite range

/// Runs the `stlmask` command line with `args` (without the program name).
/// JSON results go to `out` unless --out names a file; diagnostics go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace stlmask::cli
