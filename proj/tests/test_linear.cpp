#include <gtest/gtest.h>

#include <cmath>
#include <numeric>

#include "ardt/error.hpp"
#include "ardt/linear.hpp"
#include "ardt/metrics.hpp"
#include "ardt/synth.hpp"
#include "support.hpp"

namespace ardt {
namespace {

using testing::numeric;

double mean_estimate(const LinearModel& m, const Dataset& d) {
  double s = 0;
  for (std::size_t i = 0; i < d.rows(); ++i) s += m.estimate(d.row(i));
  return s / static_cast<double>(d.rows());
}

Dataset gaussian(std::uint64_t seed, double mu, std::size_t n = 600) {
  SynthSpec s;
  s.n = n;
  s.m = 3;
  s.mu = mu;
  s.separation = 1.5;
  s.seed = seed;
  return generate(s);
}

TEST(LinearRegression, IdentityOnTwoPoints) {
  const LinearModel m = fit_linear_regression(numeric({{0}, {1}}, {0, 1}), {});
  ASSERT_EQ(m.weights.size(), 1u);
  EXPECT_NEAR(m.weights[0], 1.0, 1e-9);
  EXPECT_NEAR(m.intercept, 0.0, 1e-9);
  EXPECT_EQ(m.threshold, 0.5);
  EXPECT_EQ(m.diagnostics.solver, "closed-form");
}

TEST(LinearRegression, MeanMatchesImbalance) {
  for (std::uint64_t seed : {7u, 8u, 9u}) {
    const Dataset d = gaussian(seed, 0.1);
    const LinearModel m = fit_linear_regression(d, {});
    EXPECT_NEAR(mean_estimate(m, d), imbalance_ratio(d).mu, 1e-10);
  }
}

TEST(LinearRegression, GradientDescentAgreesWithClosedForm) {
  const Dataset d = gaussian(3, 0.2, 300);
  LinearTrainConfig gd;
  gd.solver = LinearSolver::GradientDescent;
  gd.max_iters = 200000;
  gd.grad_tol = 1e-12;
  const LinearModel a = fit_linear_regression(d, {});
  const LinearModel b = fit_linear_regression(d, gd);
  EXPECT_TRUE(b.diagnostics.converged);
  for (std::size_t j = 0; j < a.weights.size(); ++j) EXPECT_NEAR(a.weights[j], b.weights[j], 1e-6);
  EXPECT_NEAR(a.intercept, b.intercept, 1e-6);
}

TEST(LinearRegression, DuplicatingRowsLeavesWeightsUnchanged) {
  const Dataset d = gaussian(4, 0.15, 200);
  std::vector<std::size_t> twice(2 * d.rows());
  for (std::size_t i = 0; i < twice.size(); ++i) twice[i] = i % d.rows();
  const LinearModel a = fit_linear_regression(d, {});
  const LinearModel b = fit_linear_regression(d.subset(twice), {});
  for (std::size_t j = 0; j < a.weights.size(); ++j) EXPECT_NEAR(a.weights[j], b.weights[j], 1e-10);
  EXPECT_NEAR(a.intercept, b.intercept, 1e-10);
}

TEST(LinearRegression, SingularSystemFallsBack) {
  const Dataset d = numeric({{1, 2}, {2, 4}, {3, 6}, {4, 8}, {5, 10}}, {0, 0, 1, 1, 1});
  const LinearModel m = fit_linear_regression(d, {});
  EXPECT_TRUE(m.diagnostics.singular_fallback);
  EXPECT_EQ(m.diagnostics.solver, "gradient-descent");
}

TEST(LinearRegression, CategoricalOneHot) {
  std::vector<FeatureInfo> info{{"c", FeatureKind::Categorical, {"a", "b", "c"}}};
  const Dataset d("cat", {0, 1, 2, 0, 1, 2, 2, 2}, {0, 0, 1, 0, 1, 1, 1, 1}, info);
  const LinearModel m = fit_linear_regression(d, {});
  EXPECT_EQ(m.weights.size(), 2u);
  // Least squares on indicators reproduces the per-level label means.
  const double a = 0, b = 1, c = 2;
  EXPECT_NEAR(m.estimate(std::span(&a, 1)), 0.0, 1e-10);
  EXPECT_NEAR(m.estimate(std::span(&b, 1)), 0.5, 1e-10);
  EXPECT_NEAR(m.estimate(std::span(&c, 1)), 1.0, 1e-10);
  const double unseen = 7;
  EXPECT_NEAR(m.estimate(std::span(&unseen, 1)), 0.0, 1e-10);
}

TEST(LogisticRegression, SymmetricBalanced) {
  const Dataset d = numeric({{-2}, {-1}, {-0.5}, {0.5}, {1}, {2}, {-1.5}, {1.5}}, {0, 0, 1, 0, 1, 1, 0, 1});
  const LinearModel m = fit_logistic_regression(d, {});
  EXPECT_NEAR(m.intercept, 0.0, 1e-6);
  const double zero = 0;
  EXPECT_NEAR(m.estimate(std::span(&zero, 1)), 0.5, 1e-6);
}

TEST(LogisticRegression, MeanMatchesImbalance) {
  const Dataset d = gaussian(11, 0.1);
  LinearTrainConfig cfg;
  cfg.max_iters = 100000;
  const LinearModel m = fit_logistic_regression(d, cfg);
  ASSERT_TRUE(m.diagnostics.converged);
  EXPECT_LT(std::abs(mean_estimate(m, d) - 0.1), 1e-4);
}

TEST(LogisticRegression, CostWeightedMeanIsHalf) {
  const Dataset d = gaussian(12, 0.1);
  LinearTrainConfig cfg;
  cfg.max_iters = 100000;
  const auto w = cost_weights(imbalance_ratio(d));
  cfg.instance_weights = w;
  const LinearModel m = fit_logistic_regression(d, cfg);
  ASSERT_TRUE(m.diagnostics.converged);
  double num = 0, den = 0;
  for (std::size_t i = 0; i < d.rows(); ++i) {
    const double c = d.label(i) ? w.c1 : w.c0;
    num += c * m.estimate(d.row(i));
    den += c;
  }
  EXPECT_LT(std::abs(num / den - 0.5), 1e-4);
}

TEST(LogisticRegression, SeparableDataStaysFinite) {
  const Dataset d = numeric({{0}, {1}, {2}, {3}}, {0, 0, 1, 1});
  LinearTrainConfig cfg;
  cfg.max_iters = 500;
  const LinearModel m = fit_logistic_regression(d, cfg);
  EXPECT_FALSE(m.diagnostics.converged);
  EXPECT_TRUE(std::isfinite(m.weights[0]));
  EXPECT_GT(m.diagnostics.gradient_norm, 0.0);
}

TEST(LinearModels, SingleClassRejected) {
  const Dataset d = numeric({{0}, {1}, {2}}, {0, 0, 0});
  EXPECT_THROW(fit_linear_regression(d, {}), DataError);
  EXPECT_THROW(fit_logistic_regression(d, {}), DataError);
}

TEST(Threshold, FromImbalance) {
  EXPECT_EQ(threshold_from_imbalance({0.5}), 0.5);
  EXPECT_EQ(threshold_from_imbalance({0.16}), 0.16);
  EXPECT_EQ(threshold_from_imbalance({0.03}), 0.03);
  EXPECT_THROW(threshold_from_imbalance({0.0}), InvalidArgument);
  EXPECT_THROW(threshold_from_imbalance({1.0}), InvalidArgument);
}

TEST(CostWeights, Formulas) {
  const auto w = cost_weights({0.25});
  EXPECT_DOUBLE_EQ(w.c1, 2.0);
  EXPECT_DOUBLE_EQ(w.c0, 2.0 / 3.0);
  const auto b = cost_weights({0.5});
  EXPECT_EQ(b.c1, 1.0);
  EXPECT_EQ(b.c0, 1.0);
  for (double mu : {0.01, 0.03, 0.16, 0.4, 0.9}) {
    const auto c = cost_weights({mu});
    EXPECT_NEAR(c.c1 * mu + c.c0 * (1 - mu), 1.0, 1e-15);
    EXPECT_NEAR(c.c1 * mu, c.c0 * (1 - mu), 1e-15);
  }
  EXPECT_THROW(cost_weights({0.0}), InvalidArgument);
}

TEST(Classify, ThresholdAndClamp) {
  LinearModel m;
  m.link = Link::Identity;
  m.weights = {1.0};
  m.encoder = FeatureEncoder({{"x", FeatureKind::Numeric, {}}});
  m.threshold = 0.5;
  const double a = 0.4, b = 0.5, c = 1.3;
  EXPECT_EQ(classify(m, std::span(&a, 1)), 0);
  EXPECT_EQ(classify(m, std::span(&b, 1)), 1);
  EXPECT_EQ(m.score(std::span(&c, 1)), 1.0);
  EXPECT_EQ(classify(m, std::span(&c, 1)), 1);
  const double two[2] = {1, 2};
  EXPECT_THROW(classify(m, std::span(two, 2)), InvalidArgument);
}

TEST(Classify, LoweringThresholdIsMonotone) {
  const Dataset d = gaussian(21, 0.1);
  LinearModel m = fit_logistic_regression(d, {});
  double prev_sens = -1, prev_spec = 2;
  for (double t = 0.95; t > 0.0; t -= 0.05) {
    m.threshold = t;
    ConfusionMatrix cm;
    for (std::size_t i = 0; i < d.rows(); ++i) cm.add(d.label(i), classify(m, d.row(i)));
    EXPECT_GE(sensitivity(cm), prev_sens);
    EXPECT_LE(specificity(cm), prev_spec);
    prev_sens = sensitivity(cm);
    prev_spec = specificity(cm);
  }
}

}  // namespace
}  // namespace ardt
