#pragma once

#include <cmath>
#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "ardt/dataset.hpp"
#include "ardt/rng.hpp"

namespace ardt::testing {

inline Dataset numeric(const std::vector<std::vector<double>>& rows, const std::vector<Label>& labels,
                       std::string name = "t") {
  std::vector<double> flat;
  const std::size_t m = rows.empty() ? 0 : rows.front().size();
  for (const auto& r : rows) flat.insert(flat.end(), r.begin(), r.end());
  std::vector<FeatureInfo> info;
  for (std::size_t j = 0; j < m; ++j) info.push_back({"x" + std::to_string(j), FeatureKind::Numeric, {}});
  return Dataset(std::move(name), std::move(flat), labels, std::move(info));
}

// Uniform features in [0,1) with labels from a random threshold rule plus noise.
inline Dataset random_table(std::uint64_t seed, std::size_t n, std::size_t m, double mu) {
  Engine e = make_engine(seed, "random-table");
  std::vector<std::vector<double>> rows(n, std::vector<double>(m));
  std::vector<Label> y(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (auto& v : rows[i]) v = std::round(uniform01(e) * 20.0) / 20.0;
    double s = 0;
    for (std::size_t j = 0; j < m; ++j) s += rows[i][j] * static_cast<double>(j + 1);
    y[i] = (s / static_cast<double>(m * (m + 1) / 2) + 0.3 * uniform01(e) > 1.15 - mu) ? 1 : 0;
  }
  y[0] = 1;
  y[1] = 0;
  return numeric(rows, y);
}

inline std::filesystem::path temp_dir(const std::string& name) {
  auto dir = std::filesystem::temp_directory_path() / ("ardt-tests-" + name);
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

}  // namespace ardt::testing
