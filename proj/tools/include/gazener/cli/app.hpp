#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace gazener::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitValidation = 1;
inline constexpr int kExitRuntime = 2;

// Environment variable that replaces the output directory of any subcommand.
inline constexpr const char* kOutDirEnv = "GAZENER_OUT_DIR";

// Runs the command line `args` (without the program name). Returns the exit
// code: 0 success, 1 invalid input or config, 2 runtime or numeric failure.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace gazener::cli
