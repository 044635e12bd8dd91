#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace specgame::cli {

/// Runs the command line `args` (program name excluded). Returns 0 on
/// success, 1 on invalid input or configuration, 2 on numerical failure.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace specgame::cli
