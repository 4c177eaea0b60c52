#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace chigraph::cli {

// Exit codes.
inline constexpr int kExitOk = 0;
inline constexpr int kExitValidation = 1;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitIo = 3;

// Runs one command line (args[0] is the program name). Diagnostics go to
// `err` as lines of the form "chigraph: error[<kind>]: <message>".
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace chigraph::cli
