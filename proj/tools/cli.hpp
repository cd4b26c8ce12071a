#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace qgp::cli {

// Exit codes.
inline constexpr int kOk = 0;
inline constexpr int kInvalid = 2;
inline constexpr int kNumerical = 3;

// Runs `qgpdark <args...>` (args excludes the program name). Data goes to
// `out`, diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace qgp::cli
