#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace logschro::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitNonConvergence = 2;
inline constexpr int kExitValidation = 3;

/// Runs one command line; args excludes the program name. Results go to
/// `out` unless --out is given, diagnostics to `err`.
int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err);

}  // namespace logschro::cli
