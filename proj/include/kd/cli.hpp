#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace kd {

/// Exit statuses of the command-line tool.
enum ExitCode : int {
  kExitOk = 0,
  kExitVerifyFailed = 1,
  kExitUsage = 2,
  kExitBadInput = 3,
  kExitCap = 4,
  kExitPrecondition = 5,
  kExitInternal = 70,
};

/// Runs `kdessin` with `args` (program name excluded). Reports go to `out`
/// unless `--out` names a file; errors go to `err` as a JSON document.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace kd
