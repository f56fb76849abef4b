#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace sysrisk::service {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitRuntime = 2;

/// Runs one CLI invocation. `args` excludes the program name. Results go to
/// `out` (JSON by default, CSV/text with --format); usage problems print the
/// synopsis to `err` and return 1, runtime failures print an ApiError JSON
/// to `err` and return 2.
int cli_dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace sysrisk::service
