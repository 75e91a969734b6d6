#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace hypolo::cli {

enum ExitStatus : int { kOk = 0, kInternal = 1, kUsage = 2 };

/// Runs one invocation; `args` excludes the program name. Every output file
/// gets a sibling "<file>.manifest.json" recording the invocation.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace hypolo::cli
