#pragma once

#include <ostream>

namespace hardy::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitParse = 2;
inline constexpr int kExitPrecondition = 3;
inline constexpr int kExitInvariant = 4;

/// Runs the command line. Artifacts go to --out-dir; `out` gets a one-line
/// JSON summary, `err` the diagnostics.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace hardy::cli
