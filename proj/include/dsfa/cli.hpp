#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace dsfa::cli {

enum ExitCode : int {
  kOk = 0,
  kFailure = 1,
  kUsage = 2,
  kIo = 3,
  kParse = 4,
  kNumerical = 5,
};

/// Entry point shared by the `dsfa` binary and the tests. `args` excludes the
/// program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace dsfa::cli
