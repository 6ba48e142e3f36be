#pragma once

#include <string>
#include <vector>

namespace gramops {

/// Dispatches a full command line (without argv[0]). Returns the process
/// exit code: 0 ok, 2 input error, 3 capacity, 4 non-convergence.
int run_cli(const std::vector<std::string>& args);

}  // namespace gramops
