#pragma once

#include <ostream>
#include <string>
#include <vector>

#include "orbitmetric/json_io.hpp"

namespace orbitmetric {

inline constexpr int kExitOk = 0;
inline constexpr int kExitViolated = 1;
inline constexpr int kExitInputError = 2;

/// Full command-line entry point. Output goes to `out` (or the --output file),
/// diagnostics to `err`. Returns the process exit code.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Effective configuration for argv (file values overridden by flags), as
/// echoed into outputs. Throws invalid-argument on conflicts or bad input.
Json parse_config(const std::vector<std::string>& args);

}  // namespace orbitmetric
