#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace centriscan {

inline constexpr int kExitClean = 0;
inline constexpr int kExitFindings = 1;
inline constexpr int kExitUsage = 2;

/// `args` excludes the program name. Report goes to `out`, everything else to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace centriscan
