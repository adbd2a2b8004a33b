#include "ardt_cli/runner.hpp"

#include <atomic>
#include <chrono>
#include <mutex>
#include <optional>
#include <thread>

#include "ardt/rng.hpp"

namespace ardt::cli {

MethodOptions method_options(const RunConfig& cfg) {
  MethodOptions opt;
  opt.tree = cfg.tree;
  opt.linear = cfg.linear;
  return opt;
}

BenchmarkRun run_benchmark(const RunConfig& cfg,
                           const std::function<void(const std::string&)>& progress) {
  cfg.validate();
  const auto start = std::chrono::steady_clock::now();
  BenchmarkRun run;
  auto& res = run.results;
  res.methods = cfg.methods;

  std::vector<std::optional<Dataset>> data;
  for (const auto& entry : cfg.datasets) {
    res.datasets.push_back({entry.name, 0, 0, 0});
    try {
      const LabelColumn col = entry.label.empty() ? LabelColumn::last() : LabelColumn::parse(entry.label);
      Dataset d = load_dataset(entry.path, col, entry.positive).renamed(entry.name);
      if (entry.subsample && *entry.subsample < d.rows()) {
        d = stratified_subsample(d, *entry.subsample, derive_seed(cfg.seed, "subsample/" + entry.name))
                .renamed(entry.name);
      }
      res.datasets.back() = {entry.name, d.rows(), d.cols(), d.positives()};
      data.emplace_back(std::move(d));
    } catch (const std::exception& e) {
      res.failures.push_back({entry.name, "", e.what()});
      data.emplace_back(std::nullopt);
    }
  }

  const MethodOptions options = method_options(cfg);
  std::vector<std::unique_ptr<Method>> methods;
  for (const auto& m : cfg.methods) methods.push_back(build_method(m, options));

  const std::size_t nd = cfg.datasets.size();
  const std::size_t nm = methods.size();
  res.cells.assign(nd, std::vector<std::optional<ExperimentResult>>(nm));
  std::vector<std::optional<std::string>> errors(nd * nm);

  std::atomic<std::size_t> next{0};
  std::mutex progress_mutex;
  const auto worker = [&] {
    for (std::size_t cell = next++; cell < nd * nm; cell = next++) {
      const std::size_t i = cell / nm;
      const std::size_t j = cell % nm;
      if (!data[i]) continue;
      try {
        res.cells[i][j] =
            cross_validate(*methods[j], *data[i], cfg.k, derive_seed(cfg.seed, "dataset/" + data[i]->name()),
                           cfg.datasets[i].sparse_folds);
      } catch (const std::exception& e) {
        errors[cell] = e.what();
      }
      if (progress) {
        std::lock_guard lock(progress_mutex);
        progress(cfg.datasets[i].name + " / " + cfg.methods[j] +
                 (errors[cell] ? " failed: " + *errors[cell] : " done"));
      }
    }
  };
  const std::size_t threads = std::min(cfg.jobs, nd * nm);
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (std::size_t t = 0; t < threads; ++t) pool.emplace_back(worker);
  }

  for (std::size_t cell = 0; cell < nd * nm; ++cell) {
    if (errors[cell]) {
      res.failures.push_back({cfg.datasets[cell / nm].name, cfg.methods[cell % nm], *errors[cell]});
    }
  }

  run.info.seed = cfg.seed;
  run.info.config_hash = config_hash(cfg);
  run.info.k = cfg.k;
  run.info.config = to_json(cfg);
  run.info.alpha = cfg.alpha;
  run.info.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return run;
}

}  // namespace ardt::cli
