#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace benford {

/// Runs the command-line interface. `args` excludes the program name.
/// Returns the process exit status: 0 accept (or nothing to judge),
/// 2 reject, 1 error.
int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err);

}  // namespace benford
