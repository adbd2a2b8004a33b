#include "ardt_cli/commands.hpp"

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>

#include <CLI11.hpp>

#include "ardt/dataset.hpp"
#include "ardt/model_io.hpp"
#include "ardt/report.hpp"
#include "ardt/rng.hpp"
#include "ardt/split_criteria.hpp"
#include "ardt/synth.hpp"
#include "ardt/version.hpp"
#include "ardt_cli/config.hpp"
#include "ardt_cli/runner.hpp"

namespace ardt::cli {

namespace {

std::string format_general(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

std::vector<double> parse_reals(const std::string& text, const char* what) {
  std::vector<double> out;
  for (const auto& item : split_list(text)) {
    try {
      std::size_t used = 0;
      out.push_back(std::stod(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw ConfigError(std::string(what) + ": '" + item + "' is not a number");
    }
  }
  if (out.empty()) throw ConfigError(std::string(what) + ": list is empty");
  return out;
}

// Writes to `path`, or to `out` when path is empty or "-".
template <typename Fn>
void with_output(const std::string& path, std::ostream& out, Fn&& fn) {
  if (path.empty() || path == "-") {
    fn(out);
    return;
  }
  std::ofstream file(path, std::ios::binary);
  if (!file) throw Error("cannot write " + path);
  fn(file);
  if (!file) throw Error("failed writing " + path);
}

struct BenchmarkArgs {
  std::string config;
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> k;
  std::optional<std::size_t> jobs;
  std::string methods;
  std::string output;
};

int cmd_benchmark(const BenchmarkArgs& a, std::ostream& out, std::ostream& err) {
  RunConfig cfg = load_run_config(a.config);
  if (a.seed) cfg.seed = *a.seed;
  if (a.k) cfg.k = *a.k;
  if (a.jobs) cfg.jobs = *a.jobs;
  if (!a.methods.empty()) cfg.methods = split_list(a.methods);
  if (const char* env = std::getenv(kOutputDirEnv); env && *env) cfg.output_dir = env;
  if (!a.output.empty()) cfg.output_dir = a.output;
  cfg.validate();

  const BenchmarkRun run = run_benchmark(cfg, [&](const std::string& line) { err << line << '\n'; });
  write_reports(run.results, run.info, cfg.output_dir);
  out << "wrote reports to " << cfg.output_dir.string() << " (config " << run.info.config_hash
      << ", seed " << cfg.seed << ")\n";
  if (!run.results.failures.empty()) {
    err << run.results.failures.size() << " failure(s):\n";
    for (const auto& f : run.results.failures) {
      err << "  " << f.dataset << (f.method.empty() ? "" : " / " + f.method) << ": " << f.message
          << '\n';
    }
    return kRuntimeFailure;
  }
  return kSuccess;
}

struct TrainArgs {
  std::string data;
  std::string label;
  std::string positive = "positive";
  std::string method;
  std::string out;
  std::string config;
  std::uint64_t seed = 1;
};

int cmd_train(const TrainArgs& a, std::ostream& out) {
  MethodOptions opt;
  if (!a.config.empty()) load_hyperparameters(a.config, opt.tree, opt.linear);
  const auto method = build_method(a.method, opt);
  const LabelColumn col = a.label.empty() ? LabelColumn::last() : LabelColumn::parse(a.label);
  const Dataset d = load_dataset(a.data, col, a.positive);
  const FittedModel model = method->fit(d, derive_seed(a.seed, "train"));
  save_model(model, a.out);
  out << "trained " << a.method << " on " << d.rows() << " rows; model written to " << a.out << '\n';
  return kSuccess;
}

int cmd_predict(const std::string& model_path, const std::string& data, const std::string& dest,
                std::ostream& out) {
  const FittedModel model = load_model(model_path);
  const FeatureTable table = load_features(data, model.features(), model.label());
  with_output(dest, out, [&](std::ostream& os) {
    os << "row,prediction,label\n";
    for (std::size_t i = 0; i < table.rows(); ++i) {
      const Label y = model.predict(table.row(i));
      os << i << ',' << int{y} << ',' << (y ? model.label().positive : model.label().negative) << '\n';
    }
  });
  return kSuccess;
}

struct GenerateArgs {
  SynthSpec spec;
  std::string boundary = "linear-gaussian";
  std::size_t days = 0;
  double mu_low = 0.06;
  double mu_high = 0.16;
  std::string out;
};

int cmd_generate(GenerateArgs a, std::ostream& out) {
  a.spec.boundary = boundary_from_string(a.boundary);
  Dataset d = [&] {
    if (a.days == 0) return generate(a.spec);
    DailySpec daily;
    daily.base = a.spec;
    daily.days = a.days;
    daily.mu_low = a.mu_low;
    daily.mu_high = a.mu_high;
    return generate_daily(daily);
  }();
  write_csv(d, a.out);
  out << "wrote " << d.rows() << " rows (" << d.positives() << " positive) to " << a.out << '\n';
  return kSuccess;
}

int cmd_dump_curves(const std::string& alphas, std::size_t points, const std::string& ps,
                    const std::string& dest, std::ostream& out) {
  const std::vector<double> alpha_grid = parse_reals(alphas, "--alphas");
  std::vector<double> p_grid;
  if (!ps.empty()) {
    p_grid = parse_reals(ps, "--p");
  } else {
    if (points < 2) throw ConfigError("--points must be >= 2");
    for (std::size_t i = 0; i < points; ++i) {
      p_grid.push_back(static_cast<double>(i) / static_cast<double>(points - 1));
    }
  }
  for (double p : p_grid) {
    if (!(p >= 0 && p <= 1)) throw ConfigError("--p: values must lie in [0,1]");
  }
  for (double al : alpha_grid) {
    if (!(al >= 0)) throw ConfigError("--alphas: values must be >= 0");
  }
  const auto rows = entropy_curves(alpha_grid, p_grid);
  with_output(dest, out, [&](std::ostream& os) {
    os << "alpha,p,renyi,shannon\n";
    for (const auto& r : rows) {
      os << format_general(r.alpha) << ',' << format_general(r.p) << ',' << format_general(r.renyi)
         << ',' << format_general(r.shannon) << '\n';
    }
  });
  return kSuccess;
}

}  // namespace

std::vector<CurveRow> entropy_curves(const std::vector<double>& alphas, const std::vector<double>& ps) {
  std::vector<CurveRow> rows;
  rows.reserve(alphas.size() * ps.size());
  for (double a : alphas) {
    for (double p : ps) {
      const ClassDistribution dist = from_p1(p);
      rows.push_back({a, p, renyi_entropy(dist, RenyiAlpha{a}), shannon_entropy(dist)});
    }
  }
  return rows;
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Imbalance-aware thresholding and adaptive Rényi decision trees", "ardt"};
  app.set_version_flag("--version", std::string(kVersion));
  app.require_subcommand(1);

  BenchmarkArgs bench;
  auto* b = app.add_subcommand("benchmark", "Cross-validate every (dataset, method) pair and write reports");
  b->add_option("-c,--config", bench.config, "INI run configuration")->required();
  b->add_option("--seed", bench.seed, "Root seed (overrides run.seed)");
  b->add_option("-k,--folds", bench.k, "Fold count (overrides run.k)");
  b->add_option("-j,--jobs", bench.jobs, "Worker threads (overrides run.jobs)");
  b->add_option("--methods", bench.methods, "Comma-separated methods (overrides run.methods)");
  b->add_option("-o,--output", bench.output, "Output directory (overrides $ARDT_OUTPUT_DIR and run.output_dir)");

  TrainArgs train;
  auto* t = app.add_subcommand("train", "Fit one method on a dataset and save the model as JSON");
  t->add_option("-d,--data", train.data, "CSV or KEEL .dat file")->required();
  t->add_option("--label", train.label, "Label column name or 0-based index (default: last)");
  t->add_option("--positive", train.positive, "Label value treated as class 1")->capture_default_str();
  t->add_option("-m,--method", train.method, "Method name, e.g. ARDT or LogR+OS")->required();
  t->add_option("-o,--out", train.out, "Model file to write")->required();
  t->add_option("--config", train.config, "INI file with [tree] / [linear] sections");
  t->add_option("--seed", train.seed, "Root seed")->capture_default_str();

  std::string model_path, predict_data, predict_out;
  auto* p = app.add_subcommand("predict", "Predict labels for a data file with a saved model");
  p->add_option("--model", model_path, "Model JSON file")->required();
  p->add_option("-d,--data", predict_data, "CSV or KEEL .dat file")->required();
  p->add_option("-o,--out", predict_out, "Predictions CSV (default: stdout)");

  GenerateArgs gen;
  auto* g = app.add_subcommand("generate", "Write a synthetic imbalanced dataset as CSV");
  g->add_option("-n,--rows", gen.spec.n, "Row count (per day with --days)")->capture_default_str();
  g->add_option("-m,--features", gen.spec.m, "Feature count")->capture_default_str();
  g->add_option("--mu", gen.spec.mu, "Positive fraction")->capture_default_str();
  g->add_option("--boundary", gen.boundary, "linear-gaussian, xor or annulus")->capture_default_str();
  g->add_option("--separation", gen.spec.separation, "Mean distance for linear-gaussian")
      ->capture_default_str();
  g->add_option("--noise", gen.spec.noise, "Label-flip rate in [0,0.5)")->capture_default_str();
  g->add_option("--seed", gen.spec.seed, "Seed")->capture_default_str();
  g->add_option("--days", gen.days, "Concatenate this many daily blocks with mu ~ U[mu-low, mu-high]");
  g->add_option("--mu-low", gen.mu_low, "Lowest daily mu")->capture_default_str();
  g->add_option("--mu-high", gen.mu_high, "Highest daily mu")->capture_default_str();
  g->add_option("-o,--out", gen.out, "CSV file to write")->required();

  std::string alphas = "0,0.25,0.5,1,2,4,8";
  std::string p_list;
  std::size_t points = 101;
  std::string curves_out;
  auto* c = app.add_subcommand("dump-curves", "Rényi and Shannon entropy curves as CSV");
  c->add_option("--alphas", alphas, "Comma-separated alpha grid")->capture_default_str();
  c->add_option("--points", points, "Evenly spaced p values in [0,1]")->capture_default_str();
  c->add_option("--p", p_list, "Explicit comma-separated p grid (overrides --points)");
  c->add_option("-o,--out", curves_out, "CSV file (default: stdout)");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kSuccess : kConfigError;
  }

  try {
    if (b->parsed()) return cmd_benchmark(bench, out, err);
    if (t->parsed()) return cmd_train(train, out);
    if (p->parsed()) return cmd_predict(model_path, predict_data, predict_out, out);
    if (g->parsed()) return cmd_generate(gen, out);
    if (c->parsed()) return cmd_dump_curves(alphas, points, p_list, curves_out, out);
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << '\n';
    return kConfigError;
  } catch (const InvalidArgument& e) {
    err << "error: " << e.what() << '\n';
    return kConfigError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kRuntimeFailure;
  }
  return kConfigError;
}

}  // namespace ardt::cli
