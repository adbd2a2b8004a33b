#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "ardt/error.hpp"
#include "ardt/linear.hpp"
#include "ardt/tree.hpp"

namespace ardt::cli {

class ConfigError : public Error {
 public:
  using Error::Error;
};

struct DatasetEntry {
  std::string name;
  std::filesystem::path path;  // resolved against the config file's directory
  std::string label;           // column name or index; empty = last column
  std::string positive = "positive";
  std::optional<std::size_t> subsample;
  bool sparse_folds = false;  // allow a class with fewer than k members
};

struct RunConfig {
  std::vector<DatasetEntry> datasets;
  std::vector<std::string> methods;
  std::size_t k = 10;
  std::uint64_t seed = 1;
  std::filesystem::path output_dir = "results";
  std::size_t jobs = 1;
  double alpha = 0.05;
  TreeConfig tree;
  LinearTrainConfig linear;

  void validate() const;
};

// Sections: [run], [tree], [linear], [dataset.NAME]. Unknown sections, keys
// or malformed values raise ConfigError naming them.
RunConfig load_run_config(const std::filesystem::path& path);

// Parses "[tree]" and "[linear]" only; used by `train`.
void load_hyperparameters(const std::filesystem::path& path, TreeConfig& tree,
                          LinearTrainConfig& linear);

// Canonical JSON form of the resolved configuration.
nlohmann::json to_json(const RunConfig& cfg);

// Hex FNV-1a of the canonical JSON.
std::string config_hash(const RunConfig& cfg);

std::vector<std::string> split_list(const std::string& text);

}  // namespace ardt::cli
