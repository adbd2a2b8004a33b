#include "ardt/evaluation.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include <boost/math/special_functions/gamma.hpp>

#include "ardt/error.hpp"
#include "ardt/rng.hpp"

namespace ardt {

namespace {

void check_disjoint(const std::vector<std::size_t>& train, const std::vector<std::size_t>& test,
                    std::size_t n) {
  std::vector<char> seen(n, 0);
  for (auto r : test) seen[r] = 1;
  for (auto r : train) {
    if (seen[r]) throw std::logic_error("cross_validate: test row leaked into training part");
  }
  if (train.size() + test.size() != n) {
    throw std::logic_error("cross_validate: folds do not partition the dataset");
  }
}

}  // namespace

ExperimentResult cross_validate(const Method& method, const Dataset& d, std::size_t k,
                                std::uint64_t seed, bool allow_sparse_folds) {
  const auto start = std::chrono::steady_clock::now();
  const FoldAssignment folds = stratified_k_fold(d, k, derive_seed(seed, "fold"), allow_sparse_folds);

  ExperimentResult out;
  out.dataset = d.name();
  out.method = method.name();
  out.k = k;
  for (std::size_t f = 0; f < k; ++f) {
    const auto train_rows = folds.train_rows(f);
    const auto test_rows = folds.test_rows(f);
    check_disjoint(train_rows, test_rows, d.rows());

    const Dataset train = d.subset(train_rows, d.name());
    const FittedModel model =
        method.fit(train, derive_seed(seed, method.name() + "/fold-" + std::to_string(f)));

    FoldResult fr;
    fr.fold = f;
    fr.train_rows = train_rows.size();
    fr.test_rows = test_rows.size();
    for (auto r : test_rows) fr.cm.add(d.label(r), model.predict(d.row(r)));
    fr.fscore = fscore(fr.cm);
    fr.accuracy = accuracy(fr.cm);
    out.mean_fscore += fr.fscore;
    out.mean_accuracy += fr.accuracy;
    out.folds.push_back(fr);
  }
  out.mean_fscore /= static_cast<double>(k);
  out.mean_accuracy /= static_cast<double>(k);
  out.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return out;
}

RankTable average_ranks(const std::vector<std::vector<double>>& scores, bool higher_is_better) {
  if (scores.empty()) throw InvalidArgument("average_ranks: empty score matrix");
  const std::size_t k = scores.front().size();
  if (k == 0) throw InvalidArgument("average_ranks: no methods");
  RankTable t;
  t.average.assign(k, 0.0);
  for (std::size_t i = 0; i < scores.size(); ++i) {
    const auto& row = scores[i];
    if (row.size() != k) {
      throw InvalidArgument("average_ranks: row " + std::to_string(i) + " has " +
                            std::to_string(row.size()) + " cells, expected " + std::to_string(k));
    }
    for (double v : row) {
      if (std::isnan(v)) throw InvalidArgument("average_ranks: missing cell in row " + std::to_string(i));
    }
    std::vector<std::size_t> order(k);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
      return higher_is_better ? row[a] > row[b] : row[a] < row[b];
    });
    std::vector<double> r(k);
    for (std::size_t s = 0; s < k;) {
      std::size_t e = s + 1;
      while (e < k && std::abs(row[order[e]] - row[order[s]]) <= 1e-12) ++e;
      const double shared = 0.5 * static_cast<double>(s + 1 + e);
      for (std::size_t q = s; q < e; ++q) r[order[q]] = shared;
      s = e;
    }
    for (std::size_t j = 0; j < k; ++j) t.average[j] += r[j];
    t.ranks.push_back(std::move(r));
  }
  for (auto& a : t.average) a /= static_cast<double>(scores.size());
  return t;
}

FriedmanResult friedman_test(const RankTable& ranks) {
  const auto n = static_cast<double>(ranks.datasets());
  const auto k = static_cast<double>(ranks.methods());
  if (ranks.datasets() < 2 || ranks.methods() < 2) {
    throw InvalidArgument("friedman_test: needs at least 2 datasets and 2 methods");
  }
  double sum_sq = 0;
  for (double r : ranks.average) sum_sq += r * r;
  FriedmanResult out;
  out.df = ranks.methods() - 1;
  out.statistic = std::max(0.0, 12.0 * n / (k * (k + 1)) * (sum_sq - k * (k + 1) * (k + 1) / 4.0));
  out.p_value = boost::math::gamma_q(static_cast<double>(out.df) / 2.0, out.statistic / 2.0);
  return out;
}

std::vector<bool> holm_stepdown(std::span<const double> p_values, double alpha) {
  if (p_values.empty()) throw InvalidArgument("holm_stepdown: empty p-value list");
  if (!(alpha > 0 && alpha < 1)) throw InvalidArgument("holm_stepdown: alpha must lie in (0,1)");
  const std::size_t m = p_values.size();
  std::vector<std::size_t> order(m);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return p_values[a] < p_values[b]; });
  std::vector<bool> reject(m, false);
  for (std::size_t i = 0; i < m; ++i) {
    if (!(p_values[order[i]] <= alpha / static_cast<double>(m - i))) break;
    reject[order[i]] = true;
  }
  return reject;
}

std::vector<ControlComparison> compare_to_control(const RankTable& ranks, std::size_t control,
                                                  double alpha) {
  const std::size_t k = ranks.methods();
  if (control >= k) throw InvalidArgument("compare_to_control: control index out of range");
  if (k < 2 || ranks.datasets() < 1) {
    throw InvalidArgument("compare_to_control: needs at least 2 methods");
  }
  const double kd = static_cast<double>(k);
  const double se = std::sqrt(kd * (kd + 1) / (6.0 * static_cast<double>(ranks.datasets())));
  std::vector<ControlComparison> out;
  std::vector<double> p;
  for (std::size_t j = 0; j < k; ++j) {
    if (j == control) continue;
    ControlComparison c;
    c.method = j;
    c.z = (ranks.average[j] - ranks.average[control]) / se;
    c.p_value = std::erfc(std::abs(c.z) / std::sqrt(2.0));
    out.push_back(c);
    p.push_back(c.p_value);
  }
  const auto reject = holm_stepdown(p, alpha);
  for (std::size_t i = 0; i < out.size(); ++i) out[i].reject = reject[i];
  return out;
}

}  // namespace ardt
