#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace cogres {

/// Entry point of the `cogres` tool. `args` excludes the program name.
/// Returns 0 on success, 2 on a usage error and 1 on any other failure.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace cogres
