#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "ardt/evaluation.hpp"

namespace ardt {

struct DatasetSummary {
  std::string name;
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::size_t positives = 0;
};

struct CellFailure {
  std::string dataset;
  std::string method;
  std::string message;
};

// Everything a benchmark run produced, in configuration order.
struct BenchmarkResults {
  std::vector<DatasetSummary> datasets;
  std::vector<std::string> methods;
  std::vector<std::vector<std::optional<ExperimentResult>>> cells;  // [dataset][method]
  std::vector<CellFailure> failures;  // includes datasets that failed to load
};

struct RunInfo {
  std::uint64_t seed = 0;
  std::string config_hash;
  std::size_t k = 10;
  nlohmann::json config;
  double wall_seconds = 0;
  double alpha = 0.05;  // significance level of the Holm procedure
};

enum class Score { FScore, Accuracy };

// Scores for the datasets where every method produced a result, in order.
struct CompleteScores {
  std::vector<std::string> datasets;
  std::vector<std::vector<double>> values;
};
CompleteScores complete_scores(const BenchmarkResults& r, Score score);

// Dataset rows, one score column plus one rank column per method, then a
// mean row and an avg_rank row. Missing cells print as NA.
std::string score_table_csv(const BenchmarkResults& r, Score score);

// Average ranks, Friedman test and Holm comparisons against the control
// method (ARDT when present, else the first method). Friedman and Holm are
// null when fewer than 2 complete datasets or methods exist.
nlohmann::json statistics_json(const BenchmarkResults& r, double alpha);

std::string rank_summary_csv(const BenchmarkResults& r, double alpha);

nlohmann::json manifest_json(const BenchmarkResults& r, const RunInfo& info);

// Writes fscore_table.csv, accuracy_table.csv, rank_summary.csv,
// statistics.json and manifest.json into `dir`, creating it if needed.
void write_reports(const BenchmarkResults& r, const RunInfo& info, const std::filesystem::path& dir);

// Fixed-point decimal with `digits` places; identical on every platform.
std::string format_fixed(double v, int digits = 6);

}  // namespace ardt
