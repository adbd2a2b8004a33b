#include <gtest/gtest.h>

#include <algorithm>
#include <fstream>
#include <map>
#include <set>

#include "ardt/dataset.hpp"
#include "ardt/error.hpp"
#include "support.hpp"

namespace ardt {
namespace {

using testing::numeric;
using testing::temp_dir;

std::filesystem::path write_file(const std::string& dir, const std::string& name,
                                 const std::string& body) {
  const auto path = temp_dir(dir) / name;
  std::ofstream(path) << body;
  return path;
}

Dataset skewed(std::size_t neg, std::size_t pos) {
  std::vector<std::vector<double>> rows;
  std::vector<Label> y;
  for (std::size_t i = 0; i < neg + pos; ++i) {
    rows.push_back({static_cast<double>(i), static_cast<double>(i % 7)});
    y.push_back(i < neg ? 0 : 1);
  }
  return numeric(rows, y);
}

std::vector<std::vector<double>> row_vectors(const Dataset& d) {
  std::vector<std::vector<double>> out;
  for (std::size_t i = 0; i < d.rows(); ++i) out.emplace_back(d.row(i).begin(), d.row(i).end());
  return out;
}

TEST(LoadCsv, MinimalTwoRows) {
  const auto path = write_file("csv-min", "d.csv", "x,label\n1.5,a\n2.5,b\n");
  const Dataset d = load_csv(path, LabelColumn::by_name("label"), "b");
  ASSERT_EQ(d.rows(), 2u);
  EXPECT_EQ(d.label(0), 0);
  EXPECT_EQ(d.label(1), 1);
  EXPECT_EQ(d.at(1, 0), 2.5);
  EXPECT_EQ(d.label_info().negative, "a");
}

TEST(LoadCsv, CategoricalLexiconInFirstAppearanceOrder) {
  const auto path = write_file("csv-cat", "d.csv", "c,x,y\nred,1,0\nblue,2,1\nred,3,1\ngreen,4,0\n");
  const Dataset d = load_csv(path, LabelColumn::last(), "1");
  ASSERT_EQ(d.feature_info()[0].kind, FeatureKind::Categorical);
  EXPECT_EQ(d.feature_info()[0].lexicon, (std::vector<std::string>{"red", "blue", "green"}));
  EXPECT_EQ(d.at(3, 0), 2.0);
  EXPECT_EQ(d.feature_info()[1].kind, FeatureKind::Numeric);
}

TEST(LoadCsv, Errors) {
  EXPECT_THROW(load_csv("/nonexistent/file.csv", LabelColumn::last(), "1"), DataError);
  const auto three = write_file("csv-3", "d.csv", "x,y\n1,a\n2,b\n3,c\n");
  EXPECT_THROW(load_csv(three, LabelColumn::last(), "a"), DataError);
  const auto missing = write_file("csv-miss", "d.csv", "x,y\n1,a\n,b\n");
  try {
    load_csv(missing, LabelColumn::last(), "a");
    FAIL() << "expected DataError";
  } catch (const DataError& e) {
    EXPECT_NE(std::string(e.what()).find("row 3"), std::string::npos) << e.what();
  }
  const auto ok = write_file("csv-nolabel", "d.csv", "x,y\n1,a\n2,b\n");
  EXPECT_THROW(load_csv(ok, LabelColumn::by_name("z"), "a"), DataError);
  EXPECT_THROW(load_csv(ok, LabelColumn::last(), "q"), DataError);
}

TEST(LoadKeel, Newthyroid1MatchesTableShape) {
  const Dataset d = load_keel(std::filesystem::path(ARDT_DATA_DIR) / "keel/new-thyroid1.dat");
  EXPECT_EQ(d.rows(), 215u);
  EXPECT_EQ(d.cols(), 5u);
  EXPECT_NEAR(imbalance_ratio(d).mu, 0.16, 0.005);
  EXPECT_EQ(d.feature_info()[0].name, "T3resin");
}

TEST(LoadKeel, Yeast5Imbalance) {
  const Dataset d = load_keel(std::filesystem::path(ARDT_DATA_DIR) / "keel/yeast5.dat");
  EXPECT_EQ(d.rows(), 1484u);
  EXPECT_EQ(d.positives(), 44u);
  EXPECT_NEAR(imbalance_ratio(d).mu, 44.0 / 1484.0, 1e-15);
}

TEST(ImbalanceRatio, Trivial) {
  EXPECT_EQ(imbalance_ratio(numeric({{0}, {1}, {2}, {3}}, {0, 1, 1, 0})).mu, 0.5);
  EXPECT_EQ(imbalance_ratio(numeric({{0}, {1}}, {0, 0})).mu, 0.0);
}

TEST(StratifiedKFold, OnePositivePerFold) {
  const Dataset d = skewed(90, 10);
  const auto f = stratified_k_fold(d, 10, 42);
  for (std::size_t k = 0; k < 10; ++k) {
    const auto test = f.test_rows(k);
    EXPECT_EQ(test.size(), 10u);
    EXPECT_EQ(std::count_if(test.begin(), test.end(), [&](auto r) { return d.label(r) == 1; }), 1);
  }
}

TEST(StratifiedKFold, TwoFoldsOnFourBalancedRows) {
  const Dataset d = numeric({{0}, {1}, {2}, {3}}, {0, 1, 0, 1});
  const auto f = stratified_k_fold(d, 2, 1);
  for (std::size_t k = 0; k < 2; ++k) {
    const auto test = f.test_rows(k);
    ASSERT_EQ(test.size(), 2u);
    EXPECT_NE(d.label(test[0]), d.label(test[1]));
  }
}

TEST(StratifiedKFold, TooFewPositives) {
  const Dataset d = skewed(95, 5);
  EXPECT_THROW(stratified_k_fold(d, 10, 1), InvalidArgument);
  EXPECT_NO_THROW(stratified_k_fold(d, 10, 1, true));
  EXPECT_THROW(stratified_k_fold(skewed(95, 1), 10, 1, true), InvalidArgument);
}

TEST(StratifiedKFold, PartitionAndBalanceProperties) {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const std::size_t n = 50 + seed * 7;
    const std::size_t pos = 10 + seed % 13;
    const Dataset d = skewed(n - pos, pos);
    const std::size_t k = 2 + seed % 9;
    const auto f = stratified_k_fold(d, k, seed);
    std::vector<int> seen(n, 0);
    std::size_t lo = n, hi = 0;
    for (std::size_t fold = 0; fold < k; ++fold) {
      const auto test = f.test_rows(fold);
      lo = std::min(lo, test.size());
      hi = std::max(hi, test.size());
      for (auto r : test) ++seen[r];
      const double p = static_cast<double>(std::count_if(test.begin(), test.end(),
                                                         [&](auto r) { return d.label(r) == 1; })) /
                       static_cast<double>(test.size());
      EXPECT_LE(std::abs(p - imbalance_ratio(d).mu), 1.0 / static_cast<double>(test.size()) + 1e-12);
      EXPECT_EQ(f.train_rows(fold).size() + test.size(), n);
    }
    EXPECT_LE(hi - lo, 1u);
    EXPECT_TRUE(std::all_of(seen.begin(), seen.end(), [](int c) { return c == 1; }));
    EXPECT_EQ(stratified_k_fold(d, k, seed).fold_of_row, f.fold_of_row);
  }
}

TEST(Resampling, UndersampleCounts) {
  const Dataset d = skewed(90, 10);
  const Dataset u = undersample_majority(d, 3);
  EXPECT_EQ(u.positives(), 10u);
  EXPECT_EQ(u.negatives(), 10u);
  EXPECT_EQ(imbalance_ratio(u).mu, 0.5);
  // Minority rows kept verbatim, majority rows drawn without replacement.
  std::set<std::vector<double>> neg_rows;
  for (std::size_t i = 0; i < u.rows(); ++i) {
    if (u.label(i) == 0) EXPECT_TRUE(neg_rows.insert({u.row(i).begin(), u.row(i).end()}).second);
  }
  EXPECT_EQ(row_vectors(undersample_majority(d, 3)), row_vectors(u));
}

TEST(Resampling, OversampleCopiesMinorityRows) {
  const Dataset d = skewed(90, 10);
  const Dataset o = oversample_minority(d, 9);
  EXPECT_EQ(o.positives(), 90u);
  EXPECT_EQ(o.negatives(), 90u);
  std::set<std::vector<double>> minority;
  for (std::size_t i = 0; i < d.rows(); ++i) {
    if (d.label(i)) minority.insert({d.row(i).begin(), d.row(i).end()});
  }
  for (std::size_t i = 0; i < o.rows(); ++i) {
    if (o.label(i)) EXPECT_TRUE(minority.count({o.row(i).begin(), o.row(i).end()}));
  }
}

TEST(Resampling, BalancedInputIsAPermutation) {
  const Dataset d = skewed(20, 20);
  for (const Dataset& r : {undersample_majority(d, 1), oversample_minority(d, 1)}) {
    auto a = row_vectors(d);
    auto b = row_vectors(r);
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    EXPECT_EQ(a, b);
  }
}

TEST(Resampling, SingleClassInputRejected) {
  EXPECT_THROW(undersample_majority(skewed(10, 0), 1), InvalidArgument);
  EXPECT_THROW(oversample_minority(numeric({{1}, {2}}, {1, 1}), 1), InvalidArgument);
}

TEST(SplitHoldout, CountsAndStratification) {
  const Dataset d = skewed(80, 20);
  const auto s = split_holdout(d, 0.2, 5);
  EXPECT_EQ(s.holdout.rows(), 20u);
  EXPECT_EQ(s.train.rows(), 80u);
  EXPECT_NEAR(static_cast<double>(s.holdout.positives()), 4.0, 1.0);
  std::vector<std::size_t> all = s.train_rows;
  all.insert(all.end(), s.holdout_rows.begin(), s.holdout_rows.end());
  std::sort(all.begin(), all.end());
  for (std::size_t i = 0; i < all.size(); ++i) EXPECT_EQ(all[i], i);
}

TEST(SplitHoldout, HalfOfFourBalancedRows) {
  const auto s = split_holdout(numeric({{0}, {1}, {2}, {3}}, {0, 1, 0, 1}), 0.5, 2);
  EXPECT_EQ(s.holdout.rows(), 2u);
  EXPECT_EQ(s.holdout.positives(), 1u);
  EXPECT_EQ(s.train.positives(), 1u);
}

TEST(SplitHoldout, Errors) {
  const Dataset d = skewed(80, 20);
  EXPECT_THROW(split_holdout(d, 1.0, 1), InvalidArgument);
  EXPECT_THROW(split_holdout(d, 0.0, 1), InvalidArgument);
  EXPECT_THROW(split_holdout(skewed(10, 1), 0.5, 1), InvalidArgument);
}

TEST(StratifiedSubsample, KeepsRatio) {
  const Dataset d = skewed(960, 40);
  const Dataset s = stratified_subsample(d, 250, 8);
  EXPECT_EQ(s.rows(), 250u);
  EXPECT_NEAR(static_cast<double>(s.positives()), 10.0, 1.0);
}

TEST(WriteCsv, RoundTrip) {
  const auto path = temp_dir("write-csv") / "out.csv";
  const Dataset d = skewed(6, 4);
  write_csv(d, path);
  const Dataset back = load_csv(path, LabelColumn::last(), d.label_info().positive);
  EXPECT_EQ(row_vectors(back), row_vectors(d));
  EXPECT_TRUE(std::equal(back.labels().begin(), back.labels().end(), d.labels().begin()));
}

}  // namespace
}  // namespace ardt
