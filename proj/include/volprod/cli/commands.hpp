#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace volprod::cli {

enum ExitCode { kExitPass = 0, kExitCheckFailed = 1, kExitUsage = 2 };

/// Entry point of the volprod tool; `args` excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace volprod::cli
