#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace fwaudit::cli {

// Exit statuses shared by every subcommand.
inline constexpr int kClean = 0;
inline constexpr int kFindings = 1;
inline constexpr int kUsage = 2;

// Runs one invocation. `args` excludes the program name; '-' as a path means
// `in` (inputs) or `out` (outputs).
int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err);

} // namespace fwaudit::cli
