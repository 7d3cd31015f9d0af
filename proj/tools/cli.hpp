#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace hsurf::cli {

/// Runs the command line `args` (without the program name). Returns 0 when
/// every check passed, 1 when checks ran with failures and 2 on a usage or
/// input error.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace hsurf::cli
