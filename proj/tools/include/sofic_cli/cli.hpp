#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace sofic::cli {

/// Runs one subcommand. `args` excludes the program name. Returns 0 on
/// success, 1 when a check or tolerance fails or a capacity is exceeded, and
/// 2 on usage errors.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace sofic::cli
