#pragma once

#include <string>
#include <vector>

namespace weaklip {

/// Runs one CLI invocation (args exclude the program name).
/// Exit status: 0 on success, 1 on assertion breach, 2 on usage error.
int run_cli(const std::vector<std::string>& args);

} // namespace weaklip
