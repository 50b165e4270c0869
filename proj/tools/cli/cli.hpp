#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace conifold::cli {

/// Process exit codes.
enum ExitCode : int {
  kOk = 0,
  kVerificationFailure = 1,
  kUsage = 2,
  kNumerical = 3,
  kOracleInconclusive = 4,
};

/// Environment variable naming the directory reports are written to when
/// no --output is given.
inline constexpr const char* kOutputDirEnv = "CONIFOLD_OUTPUT_DIR";

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace conifold::cli
