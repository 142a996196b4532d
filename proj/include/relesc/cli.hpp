#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace relesc {

/// Runs the relesc command line. Returns the process exit code:
/// 0 success, 1 usage/parameter errors, 2 not-applicable parameter windows,
/// 3 numerical divergence.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace relesc
