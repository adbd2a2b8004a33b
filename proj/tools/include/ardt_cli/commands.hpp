#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace ardt::cli {

enum ExitCode : int { kSuccess = 0, kConfigError = 1, kRuntimeFailure = 2 };

// Output directory override for `benchmark`, below --output and above the
// config file.
inline constexpr const char* kOutputDirEnv = "ARDT_OUTPUT_DIR";

// Entry point shared by the executable and the tests. `args` excludes argv[0].
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

struct CurveRow {
  double alpha;
  double p;
  double renyi;
  double shannon;
};

std::vector<CurveRow> entropy_curves(const std::vector<double>& alphas, const std::vector<double>& ps);

}  // namespace ardt::cli
