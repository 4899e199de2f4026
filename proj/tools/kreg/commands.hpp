#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace kreg::cli {

// Process exit codes. Stable; scripts depend on them.
enum ExitCode : int {
  kOk = 0,
  kUsage = 1,
  kSolverFailure = 2,  // NotPositiveDefinite or interpolation tolerance exceeded
  kDuplicatePoints = 3,
  kSchemaViolation = 4,  // malformed config, kernel spec, CSV or header
  kInsufficientData = 5,
  kIoError = 6,
  kCheckFailed = 7,  // counterexample verification did not hold
};

// Environment variable naming the default output directory.
inline constexpr const char* kOutputDirEnv = "KREG_OUTPUT_DIR";

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace kreg::cli
