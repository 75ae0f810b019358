#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace xprod::cli {

/// Runs one command line (without the program name). Returns the exit code:
/// 0 when every check passes, 1 on a failed check, 2 on an input error.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace xprod::cli
