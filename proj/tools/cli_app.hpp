#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace mukai::cli {

enum ExitCode : int {
  kOk = 0,
  kFailed = 1,      // validation or certificate failure
  kBadInput = 2,    // parse error or bad arguments
  kSearchBound = 3  // search bound exhausted
};

/// Runs the tool on `args` (without the program name).
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace mukai::cli
