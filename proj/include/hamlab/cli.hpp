#pragma once

#include <string>
#include <vector>

namespace hamlab {

// Full command-line front end; the binary's main() forwards here and tests
// drive it directly. Returns the process exit code: 0 clean, 10 when a
// differential run surfaced disagreements, 1 on errors.
int run_cli(const std::vector<std::string>& args);

}  // namespace hamlab
