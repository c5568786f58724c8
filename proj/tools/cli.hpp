#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace bellpoly::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitNumeric = 2;

/// Runs one command line (program name excluded). Reports go to `out`,
/// diagnostics and usage synopses to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace bellpoly::cli
