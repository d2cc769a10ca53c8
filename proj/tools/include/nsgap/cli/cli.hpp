#pragma once

#include <iosfwd>

namespace nsgap::cli {

// Exit codes.
inline constexpr int kExitOk = 0;
inline constexpr int kExitCheckFailed = 1;
inline constexpr int kExitValidation = 2;
inline constexpr int kExitNumerical = 3;
inline constexpr int kExitUnknownCommand = 64;

// Parses argv (argv[0] is the program name) and runs one subcommand.
// Reports go to `out` unless --output is given; diagnostics go to `err`.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace nsgap::cli
