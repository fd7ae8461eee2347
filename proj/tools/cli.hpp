#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace vecflow {

/// Runs one command (args exclude the program name). Exit codes: 0 ok,
/// 1 internal check failed, 2 bad input, 3 budget exhausted.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace vecflow
