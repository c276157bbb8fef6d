#pragma once

// Command-line front end. Exit codes: 0 success, 2 usage or precondition
// error, 3 internal invariant failure (including a failed prym-check
// cell).

#include <ostream>
#include <string>
#include <vector>

namespace prymkit {

inline constexpr int kExitOk = 0;
inline constexpr int kExitPrecondition = 2;
inline constexpr int kExitInvariant = 3;

/// args excludes the program name. Reports go to --out when given, to
/// `out` otherwise; diagnostics go to `err`.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace prymkit
