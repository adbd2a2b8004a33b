#include <gtest/gtest.h>

#include <cmath>

#include "ardt/error.hpp"
#include "ardt/evaluation.hpp"
#include "ardt/synth.hpp"

namespace ardt {
namespace {

std::vector<double> features(const Dataset& d) { return {d.features().begin(), d.features().end()}; }

TEST(Generate, ExactPositiveCount) {
  for (auto b : {Boundary::LinearGaussian, Boundary::Xor, Boundary::Annulus}) {
    SynthSpec s;
    s.boundary = b;
    s.n = 1000;
    s.mu = 0.1;
    EXPECT_EQ(generate(s).positives(), 100u) << to_string(b);
    s.mu = 0.033;
    s.noise = 0.2;
    EXPECT_EQ(generate(s).positives(), 33u) << to_string(b);
  }
}

TEST(Generate, DeterministicAndFinite) {
  SynthSpec s;
  s.boundary = Boundary::Annulus;
  s.seed = 99;
  const Dataset a = generate(s), b = generate(s);
  EXPECT_EQ(features(a), features(b));
  EXPECT_TRUE(std::equal(a.labels().begin(), a.labels().end(), b.labels().begin()));
  for (double v : a.features()) EXPECT_TRUE(std::isfinite(v));
  s.seed = 100;
  EXPECT_NE(features(generate(s)), features(a));
}

TEST(Generate, LinearGaussianMeanDistance) {
  SynthSpec s;
  s.n = 20000;
  s.m = 4;
  s.mu = 0.5;
  s.separation = 2.0;
  const Dataset d = generate(s);
  std::vector<double> m0(4), m1(4);
  for (std::size_t i = 0; i < d.rows(); ++i) {
    auto& m = d.label(i) ? m1 : m0;
    for (std::size_t j = 0; j < 4; ++j) m[j] += d.at(i, j) / 10000.0;
  }
  double dist = 0;
  for (std::size_t j = 0; j < 4; ++j) dist += (m1[j] - m0[j]) * (m1[j] - m0[j]);
  EXPECT_NEAR(std::sqrt(dist), 2.0, 0.06);
}

TEST(Generate, XorDefeatsLinearModels) {
  SynthSpec s;
  s.n = 1000;
  s.mu = 0.5;
  s.boundary = Boundary::Xor;
  const Dataset d = generate(s);
  const auto cdt = cross_validate(*build_method("CDT"), d, 5, 1);
  const auto logr = cross_validate(*build_method("LogR"), d, 5, 1);
  EXPECT_GT(cdt.mean_accuracy, 0.95);
  EXPECT_LT(logr.mean_accuracy, 0.65);
}

TEST(Generate, InvalidSpecs) {
  SynthSpec s;
  s.mu = 0.0;
  EXPECT_THROW(generate(s), InvalidArgument);
  s.mu = 0.1;
  s.noise = 0.5;
  EXPECT_THROW(generate(s), InvalidArgument);
  s.noise = 0;
  s.m = 1;
  s.boundary = Boundary::Xor;
  EXPECT_THROW(generate(s), InvalidArgument);
  EXPECT_THROW(boundary_from_string("spiral"), InvalidArgument);
  EXPECT_EQ(boundary_from_string("annulus"), Boundary::Annulus);
}

TEST(GenerateDaily, BlockImbalanceWithinRange) {
  DailySpec s;
  s.base.n = 200;
  s.days = 10;
  const Dataset d = generate_daily(s);
  ASSERT_EQ(d.rows(), 2000u);
  for (std::size_t day = 0; day < 10; ++day) {
    std::size_t pos = 0;
    for (std::size_t i = day * 200; i < (day + 1) * 200; ++i) pos += d.label(i);
    EXPECT_GE(pos, 12u);
    EXPECT_LE(pos, 32u);
  }
}

}  // namespace
}  // namespace ardt
