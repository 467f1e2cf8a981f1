#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace efx::cli {

enum ExitCode : int {
  kOk = 0,
  kUsage = 1,
  kInputError = 2,
  kInternalError = 3,
};

inline constexpr int kSchemaVersion = 1;

// Runs one `efx` invocation. `args` excludes the program name. Documents go
// to `out` (or the --out file), diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace efx::cli
