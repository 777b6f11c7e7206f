#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace harmonic::cli {

enum ExitCode { kOk = 0, kUsage = 1, kParse = 2, kDomain = 3, kNumerical = 4 };

/// Runs one invocation; args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace harmonic::cli
