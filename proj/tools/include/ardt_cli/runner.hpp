#pragma once

#include <functional>
#include <string>

#include "ardt/report.hpp"
#include "ardt_cli/config.hpp"

namespace ardt::cli {

struct BenchmarkRun {
  BenchmarkResults results;
  RunInfo info;
};

// Loads every dataset, cross-validates every (dataset, method) cell on
// `cfg.jobs` threads and aggregates the results in configuration order.
// Cell failures are recorded, not thrown. `progress` receives one line per
// finished cell when set.
BenchmarkRun run_benchmark(const RunConfig& cfg,
                           const std::function<void(const std::string&)>& progress = {});

MethodOptions method_options(const RunConfig& cfg);

}  // namespace ardt::cli
