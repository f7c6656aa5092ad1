#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace strength {

inline constexpr const char* kVersion = "1.0.0";

// Exit codes of the command-line tool.
enum ExitCode { kExitOk = 0, kExitUsage = 1, kExitValidation = 2, kExitGuard = 3 };

// Runs one command. args excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace strength
