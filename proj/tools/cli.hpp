#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace eqsing::cli {

// Exit codes of `analyze` and `catalog verdict`.
enum Exit : int { Simple = 0, NotSimple = 1, Failure = 2, Unknown = 3 };

/// Runs one command line; `args` excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace eqsing::cli
