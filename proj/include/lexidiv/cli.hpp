#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace lexidiv::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitValidation = 2;
inline constexpr int kExitIo = 3;

// Runs one subcommand. `args` excludes the program name. Reports go to `out`
// unless --out is given; diagnostics always go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace lexidiv::cli
