#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "ardt/dataset.hpp"
#include "ardt/methods.hpp"
#include "ardt/metrics.hpp"

namespace ardt {

struct FoldResult {
  std::size_t fold = 0;
  std::size_t train_rows = 0;
  std::size_t test_rows = 0;
  ConfusionMatrix cm;
  double fscore = 0;
  double accuracy = 0;
};

struct ExperimentResult {
  std::string dataset;
  std::string method;
  std::size_t k = 0;
  std::vector<FoldResult> folds;
  double mean_fscore = 0;
  double mean_accuracy = 0;
  double wall_seconds = 0;
};

// k-fold stratified cross-validation. Each fold trains on the other k-1 folds
// only; any resampling, weighting, pruning split or threshold is derived from
// that training part. Metrics are per fold, then averaged.
// `allow_sparse_folds` is forwarded to stratified_k_fold.
ExperimentResult cross_validate(const Method& method, const Dataset& d, std::size_t k,
                                std::uint64_t seed, bool allow_sparse_folds = false);

struct RankTable {
  std::vector<std::vector<double>> ranks;  // datasets x methods, 1 = best
  std::vector<double> average;             // per method

  std::size_t datasets() const { return ranks.size(); }
  std::size_t methods() const { return average.size(); }
};

// Ranks each row, sharing averaged ranks between tied scores.
RankTable average_ranks(const std::vector<std::vector<double>>& scores, bool higher_is_better = true);

struct FriedmanResult {
  double statistic = 0;
  double p_value = 1;
  std::size_t df = 0;
};

// Chi-square form over average ranks with k-1 degrees of freedom.
// Requires at least 2 datasets and 2 methods.
FriedmanResult friedman_test(const RankTable& ranks);

// Holm's step-down: visit p-values in ascending order, reject while
// p_(i) <= alpha / (m - i + 1), stop at the first acceptance. Result is in
// input order.
std::vector<bool> holm_stepdown(std::span<const double> p_values, double alpha);

struct ControlComparison {
  std::size_t method = 0;
  double z = 0;
  double p_value = 1;
  bool reject = false;  // false: statistically equivalent to the control
};

// Every other method against `control` via z = (R_i - R_c) / sqrt(k(k+1)/(6N)),
// two-sided normal p-values, Holm-corrected. One entry per non-control method.
std::vector<ControlComparison> compare_to_control(const RankTable& ranks, std::size_t control,
                                                  double alpha);

}  // namespace ardt
