#pragma once

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace orderly::cli {

inline constexpr std::string_view kVersion = "0.1.0";

// Exit statuses.
inline constexpr int kOk = 0;
inline constexpr int kFailed = 1;     // non-orderly term, violations, no witness
inline constexpr int kUserError = 2;  // bad flags, malformed input, coverage
inline constexpr int kInternal = 3;

// Runs one command. `args` excludes the program name. The JSON report goes
// to `out`; a one-line summary and the run manifest go to `err` (or the
// manifest to the --manifest file).
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace orderly::cli
