#include "ardt/report.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "ardt/error.hpp"
#include "ardt/version.hpp"

namespace ardt {

using nlohmann::json;

namespace {

double cell_score(const ExperimentResult& e, Score score) {
  return score == Score::FScore ? e.mean_fscore : e.mean_accuracy;
}

std::size_t control_index(const BenchmarkResults& r) {
  for (std::size_t j = 0; j < r.methods.size(); ++j) {
    if (r.methods[j] == "ARDT") return j;
  }
  return 0;
}

std::string format_rank(double v) { return format_fixed(v, 2); }

json score_statistics(const BenchmarkResults& r, Score score, double alpha) {
  const CompleteScores cs = complete_scores(r, score);
  json out;
  out["datasets_ranked"] = cs.datasets.size();
  out["control"] = r.methods.empty() ? json(nullptr) : json(r.methods[control_index(r)]);
  if (cs.datasets.empty() || r.methods.empty()) {
    out["average_ranks"] = nullptr;
    out["friedman"] = nullptr;
    out["comparisons"] = nullptr;
    return out;
  }
  const RankTable ranks = average_ranks(cs.values, true);
  json avg = json::object();
  for (std::size_t j = 0; j < r.methods.size(); ++j) avg[r.methods[j]] = ranks.average[j];
  out["average_ranks"] = std::move(avg);
  if (ranks.datasets() < 2 || ranks.methods() < 2) {
    out["friedman"] = nullptr;
    out["comparisons"] = nullptr;
    return out;
  }
  const FriedmanResult fr = friedman_test(ranks);
  out["friedman"] = {{"statistic", fr.statistic}, {"p_value", fr.p_value}, {"df", fr.df}};
  json cmp = json::array();
  for (const auto& c : compare_to_control(ranks, control_index(r), alpha)) {
    cmp.push_back({{"method", r.methods[c.method]},
                   {"z", c.z},
                   {"p_value", c.p_value},
                   {"reject", c.reject},
                   {"equivalent_to_control", !c.reject}});
  }
  out["comparisons"] = std::move(cmp);
  return out;
}

void write_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path.string());
  out << text;
  if (!out) throw Error("failed writing " + path.string());
}

}  // namespace

std::string format_fixed(double v, int digits) {
  if (std::isnan(v)) return "NA";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, v);
  std::string s = buf;
  if (s.find_first_not_of("-0.") == std::string::npos && s.front() == '-') s.erase(0, 1);
  return s;
}

CompleteScores complete_scores(const BenchmarkResults& r, Score score) {
  CompleteScores out;
  for (std::size_t i = 0; i < r.datasets.size(); ++i) {
    std::vector<double> row;
    for (std::size_t j = 0; j < r.methods.size(); ++j) {
      if (!r.cells[i][j]) break;
      row.push_back(cell_score(*r.cells[i][j], score));
    }
    if (!r.methods.empty() && row.size() == r.methods.size()) {
      out.datasets.push_back(r.datasets[i].name);
      out.values.push_back(std::move(row));
    }
  }
  return out;
}

std::string score_table_csv(const BenchmarkResults& r, Score score) {
  const CompleteScores cs = complete_scores(r, score);
  std::optional<RankTable> ranks;
  if (!cs.values.empty()) ranks = average_ranks(cs.values, true);

  std::ostringstream out;
  out << "dataset";
  for (const auto& m : r.methods) out << ',' << m << ',' << m << "_rank";
  out << '\n';

  std::size_t complete_row = 0;
  std::vector<double> sums(r.methods.size(), 0.0);
  for (std::size_t i = 0; i < r.datasets.size(); ++i) {
    const bool complete =
        complete_row < cs.datasets.size() && cs.datasets[complete_row] == r.datasets[i].name;
    out << r.datasets[i].name;
    for (std::size_t j = 0; j < r.methods.size(); ++j) {
      const auto& cell = r.cells[i][j];
      out << ',' << (cell ? format_fixed(cell_score(*cell, score)) : "NA") << ',';
      out << (complete ? format_rank(ranks->ranks[complete_row][j]) : "NA");
      if (complete) sums[j] += cell_score(*cell, score);
    }
    out << '\n';
    if (complete) ++complete_row;
  }

  out << "mean";
  for (std::size_t j = 0; j < r.methods.size(); ++j) {
    out << ','
        << (cs.values.empty() ? "NA"
                              : format_fixed(sums[j] / static_cast<double>(cs.values.size())))
        << ',';
  }
  out << '\n' << "avg_rank";
  for (std::size_t j = 0; j < r.methods.size(); ++j) {
    out << ",," << (ranks ? format_rank(ranks->average[j]) : "NA");
  }
  out << '\n';
  return out.str();
}

json statistics_json(const BenchmarkResults& r, double alpha) {
  return {{"alpha", alpha},
          {"fscore", score_statistics(r, Score::FScore, alpha)},
          {"accuracy", score_statistics(r, Score::Accuracy, alpha)}};
}

std::string rank_summary_csv(const BenchmarkResults& r, double alpha) {
  const json stats = statistics_json(r, alpha);
  const auto rank_of = [&](const char* key, const std::string& m) -> std::string {
    const json& a = stats[key]["average_ranks"];
    return a.is_null() ? "NA" : format_rank(a[m].get<double>());
  };
  const auto equivalent = [&](const char* key, std::size_t j) -> std::string {
    if (j == control_index(r)) return "control";
    const json& c = stats[key]["comparisons"];
    if (c.is_null()) return "NA";
    for (const auto& e : c) {
      if (e["method"] == r.methods[j]) return e["reject"].get<bool>() ? "no" : "yes";
    }
    return "NA";
  };
  std::ostringstream out;
  out << "method,fscore_avg_rank,accuracy_avg_rank,fscore_equivalent_to_control,"
         "accuracy_equivalent_to_control\n";
  for (std::size_t j = 0; j < r.methods.size(); ++j) {
    const auto& m = r.methods[j];
    out << m << ',' << rank_of("fscore", m) << ',' << rank_of("accuracy", m) << ','
        << equivalent("fscore", j) << ',' << equivalent("accuracy", j) << '\n';
  }
  return out.str();
}

json manifest_json(const BenchmarkResults& r, const RunInfo& info) {
  json datasets = json::array();
  for (const auto& d : r.datasets) {
    datasets.push_back({{"name", d.name},
                        {"rows", d.rows},
                        {"cols", d.cols},
                        {"positives", d.positives},
                        {"mu", d.rows ? static_cast<double>(d.positives) / static_cast<double>(d.rows) : 0.0}});
  }
  json cells = json::array();
  for (std::size_t i = 0; i < r.datasets.size(); ++i) {
    for (std::size_t j = 0; j < r.methods.size(); ++j) {
      const auto& cell = r.cells[i][j];
      if (!cell) continue;
      json folds = json::array();
      for (const auto& f : cell->folds) {
        folds.push_back({{"fold", f.fold},
                         {"train_rows", f.train_rows},
                         {"test_rows", f.test_rows},
                         {"tp", f.cm.tp},
                         {"fp", f.cm.fp},
                         {"tn", f.cm.tn},
                         {"fn", f.cm.fn},
                         {"fscore", f.fscore},
                         {"accuracy", f.accuracy}});
      }
      cells.push_back({{"dataset", cell->dataset},
                       {"method", cell->method},
                       {"k", cell->k},
                       {"mean_fscore", cell->mean_fscore},
                       {"mean_accuracy", cell->mean_accuracy},
                       {"wall_seconds", cell->wall_seconds},
                       {"folds", std::move(folds)}});
    }
  }
  json failures = json::array();
  for (const auto& f : r.failures) {
    failures.push_back({{"dataset", f.dataset}, {"method", f.method}, {"message", f.message}});
  }
  return {{"library_version", std::string(kVersion)},
          {"seed", info.seed},
          {"config_hash", info.config_hash},
          {"k", info.k},
          {"alpha", info.alpha},
          {"config", info.config},
          {"metric_conventions",
           "fscore = 2TP/(2TP+FP+FN); every ratio with a zero denominator is reported as 0"},
          {"methods", r.methods},
          {"datasets", std::move(datasets)},
          {"cells", std::move(cells)},
          {"failures", std::move(failures)},
          {"wall_seconds", info.wall_seconds}};
}

void write_reports(const BenchmarkResults& r, const RunInfo& info,
                   const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  write_text(dir / "fscore_table.csv", score_table_csv(r, Score::FScore));
  write_text(dir / "accuracy_table.csv", score_table_csv(r, Score::Accuracy));
  write_text(dir / "rank_summary.csv", rank_summary_csv(r, info.alpha));
  write_text(dir / "statistics.json", statistics_json(r, info.alpha).dump(2) + "\n");
  write_text(dir / "manifest.json", manifest_json(r, info).dump(2) + "\n");
}

}  // namespace ardt
