#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace synthpara::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitRuntime = 1;
inline constexpr int kExitUsage = 2;

// Entry point behind the `synthpara` binary. args[0] is the program name.
// Reports and help go to `out`; diagnostics and --json-logs records go to
// `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace synthpara::cli
