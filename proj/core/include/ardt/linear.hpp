#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "ardt/dataset.hpp"

namespace ardt {

enum class Link { Identity, Logistic };

// One-hot expansion of categorical columns: a column with lexicon size L
// becomes L-1 indicators for codes 1..L-1 (code 0 is the reference level).
// Codes outside the lexicon encode as the reference level.
class FeatureEncoder {
 public:
  FeatureEncoder() = default;
  explicit FeatureEncoder(std::vector<FeatureInfo> features);

  std::size_t input_arity() const { return features_.size(); }
  std::size_t output_arity() const { return output_arity_; }
  const std::vector<FeatureInfo>& features() const { return features_; }

  void encode(std::span<const double> x, std::span<double> out) const;

  friend bool operator==(const FeatureEncoder&, const FeatureEncoder&) = default;

 private:
  std::vector<FeatureInfo> features_;
  std::size_t output_arity_ = 0;
};

struct FitDiagnostics {
  std::string solver;  // "closed-form" or "gradient-descent"
  bool converged = true;
  std::size_t iterations = 0;
  double gradient_norm = 0;
  bool singular_fallback = false;  // closed form failed, gradient descent used

  friend bool operator==(const FitDiagnostics&, const FitDiagnostics&) = default;
};

struct LinearModel {
  Link link = Link::Identity;
  std::vector<double> weights;  // one per encoded column
  double intercept = 0;
  double threshold = 0.5;
  FeatureEncoder encoder;
  FitDiagnostics diagnostics;

  // theta = w . x + w0 on the raw (un-encoded) feature vector.
  double linear_predictor(std::span<const double> x) const;
  // g(theta) without clamping; for the identity link this can leave [0,1].
  double estimate(std::span<const double> x) const;
  // Score compared against the threshold: g(theta), identity clamped to [0,1].
  double score(std::span<const double> x) const;

  friend bool operator==(const LinearModel&, const LinearModel&) = default;
};

enum class LinearSolver { ClosedForm, GradientDescent };

struct InstanceWeights {
  double c1 = 1.0;  // weight of label-1 rows
  double c0 = 1.0;  // weight of label-0 rows
};

struct LinearTrainConfig {
  LinearSolver solver = LinearSolver::ClosedForm;  // logistic always uses gradient descent
  double learning_rate = 0.1;
  std::size_t max_iters = 5000;
  double grad_tol = 1e-8;
  std::optional<InstanceWeights> instance_weights;
  double l2 = 0.0;
  std::uint64_t seed = 0;

  void validate() const;
};

// Least squares with intercept. The closed form solves the (weighted) normal
// system through a rank-revealing QR; a singular system falls back to
// gradient descent and is flagged in the diagnostics.
LinearModel fit_linear_regression(const Dataset& d, const LinearTrainConfig& cfg);

// Full-batch gradient descent on the (weighted) mean negative log-likelihood.
// Non-convergence is not an error; it is reported through the diagnostics.
LinearModel fit_logistic_regression(const Dataset& d, const LinearTrainConfig& cfg);

// The decision threshold matching the class imbalance: exactly mu.
double threshold_from_imbalance(ImbalanceRatio mu);

// c1 = 1/(2 mu), c0 = 1/(2 (1 - mu)).
InstanceWeights cost_weights(ImbalanceRatio mu);

// 1 iff score >= threshold.
Label classify(const LinearModel& model, std::span<const double> x);

std::string_view to_string(Link link);

}  // namespace ardt
