#include <gtest/gtest.h>

#include <fstream>
#include <sstream>

#include "ardt/report.hpp"

namespace ardt {
namespace {

ExperimentResult cell(const std::string& d, const std::string& m, double f, double a) {
  ExperimentResult r;
  r.dataset = d;
  r.method = m;
  r.k = 2;
  r.mean_fscore = f;
  r.mean_accuracy = a;
  r.folds.resize(2);
  return r;
}

BenchmarkResults results() {
  BenchmarkResults r;
  r.methods = {"CDT", "ARDT", "LogR"};
  r.datasets = {{"a", 10, 2, 3}, {"b", 20, 2, 4}, {"c", 30, 2, 5}};
  const double f[3][3] = {{0.5, 0.7, 0.6}, {0.88, 0.88, 0.2}, {0.1, 0.9, 0.3}};
  r.cells.resize(3);
  for (std::size_t i = 0; i < 3; ++i) {
    for (std::size_t j = 0; j < 3; ++j) {
      r.cells[i].push_back(cell(r.datasets[i].name, r.methods[j], f[i][j], 0.9));
    }
  }
  return r;
}

TEST(Report, ScoreTableLayout) {
  const std::string csv = score_table_csv(results(), Score::FScore);
  std::istringstream in(csv);
  std::string line;
  std::getline(in, line);
  EXPECT_EQ(line, "dataset,CDT,CDT_rank,ARDT,ARDT_rank,LogR,LogR_rank");
  std::getline(in, line);
  EXPECT_EQ(line, "a,0.500000,3.00,0.700000,1.00,0.600000,2.00");
  std::getline(in, line);
  EXPECT_EQ(line, "b,0.880000,1.50,0.880000,1.50,0.200000,3.00");
  std::getline(in, line);
  std::getline(in, line);
  EXPECT_EQ(line.rfind("mean,", 0), 0u);
  std::getline(in, line);
  EXPECT_EQ(line.rfind("avg_rank,", 0), 0u);
}

TEST(Report, MissingCellsPrintNa) {
  auto r = results();
  r.cells[1][2].reset();
  const std::string csv = score_table_csv(r, Score::Accuracy);
  EXPECT_NE(csv.find("b,0.900000,NA,0.900000,NA,NA,NA"), std::string::npos) << csv;
  EXPECT_EQ(complete_scores(r, Score::FScore).datasets, (std::vector<std::string>{"a", "c"}));
}

TEST(Report, StatisticsUseArdtAsControl) {
  const auto j = statistics_json(results(), 0.05);
  const auto& f = j["fscore"];
  EXPECT_EQ(f["control"], "ARDT");
  EXPECT_EQ(f["friedman"]["df"], 2);
  EXPECT_EQ(f["comparisons"].size(), 2u);
  EXPECT_NEAR(f["average_ranks"]["ARDT"].get<double>(), (1 + 1.5 + 1) / 3.0, 1e-12);
}

TEST(Report, SingleCellHasNoFriedman) {
  BenchmarkResults r;
  r.methods = {"CDT"};
  r.datasets = {{"a", 10, 2, 3}};
  r.cells = {{cell("a", "CDT", 0.5, 0.5)}};
  EXPECT_TRUE(statistics_json(r, 0.05)["fscore"]["friedman"].is_null());
  EXPECT_NE(score_table_csv(r, Score::FScore).find("a,0.500000,1.00"), std::string::npos);
}

TEST(Report, ManifestCarriesProvenance) {
  RunInfo info;
  info.seed = 5;
  info.config_hash = "abc";
  const auto m = manifest_json(results(), info);
  EXPECT_EQ(m["seed"], 5);
  EXPECT_EQ(m["config_hash"], "abc");
  EXPECT_TRUE(m.contains("library_version"));
  EXPECT_TRUE(m.contains("cells"));
}

TEST(Report, FormatFixed) {
  EXPECT_EQ(format_fixed(0.5), "0.500000");
  EXPECT_EQ(format_fixed(2.0 / 3.0, 2), "0.67");
  EXPECT_EQ(format_fixed(-0.0), "0.000000");
}

}  // namespace
}  // namespace ardt
