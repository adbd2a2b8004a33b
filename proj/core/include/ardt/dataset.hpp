#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace ardt {

using Label = std::uint8_t;

enum class FeatureKind { Numeric, Categorical };

struct FeatureInfo {
  std::string name;
  FeatureKind kind = FeatureKind::Numeric;
  // Category names in first-appearance order; code i stands for lexicon[i].
  std::vector<std::string> lexicon;

  friend bool operator==(const FeatureInfo&, const FeatureInfo&) = default;
};

// Original spelling of the two label values, kept so predictions can be
// written back in the file's vocabulary.
struct LabelInfo {
  std::string column;
  std::string positive = "1";
  std::string negative = "0";

  friend bool operator==(const LabelInfo&, const LabelInfo&) = default;
};

// Immutable binary-labelled table. Features are stored row-major; categorical
// columns hold integer category codes.
class Dataset {
 public:
  Dataset(std::string name, std::vector<double> features, std::vector<Label> labels,
          std::vector<FeatureInfo> feature_info, LabelInfo label_info = {});

  const std::string& name() const { return name_; }
  std::size_t rows() const { return labels_.size(); }
  std::size_t cols() const { return info_.size(); }

  std::span<const double> row(std::size_t i) const {
    return {features_.data() + i * cols(), cols()};
  }
  double at(std::size_t i, std::size_t j) const { return features_[i * cols() + j]; }
  Label label(std::size_t i) const { return labels_[i]; }

  std::span<const Label> labels() const { return labels_; }
  std::span<const double> features() const { return features_; }
  const std::vector<FeatureInfo>& feature_info() const { return info_; }
  const LabelInfo& label_info() const { return label_info_; }

  std::size_t positives() const { return positives_; }
  std::size_t negatives() const { return rows() - positives_; }

  // Rows in the given order (duplicates allowed).
  Dataset subset(std::span<const std::size_t> indices, std::string name = {}) const;
  Dataset renamed(std::string name) const;

 private:
  std::string name_;
  std::vector<double> features_;
  std::vector<Label> labels_;
  std::vector<FeatureInfo> info_;
  LabelInfo label_info_;
  std::size_t positives_ = 0;
};

struct ImbalanceRatio {
  double mu = 0.0;
};

ImbalanceRatio imbalance_ratio(const Dataset& d);

// Label column given either by header name or by zero-based index.
struct LabelColumn {
  std::optional<std::string> name;
  std::optional<std::size_t> index;

  static LabelColumn by_name(std::string n) { return {std::move(n), std::nullopt}; }
  static LabelColumn by_index(std::size_t i) { return {std::nullopt, i}; }
  static LabelColumn last() { return {}; }
  // Numeric text is taken as an index unless it matches a header name.
  static LabelColumn parse(const std::string& text);
};

Dataset load_csv(const std::filesystem::path& path, const LabelColumn& label_column,
                 const std::string& positive_label);

// KEEL .dat reader. `@attribute` lines provide column names, `@outputs`
// (or the last attribute) selects the label; everything else is parsed by the
// CSV path.
Dataset load_keel(const std::filesystem::path& path, const std::string& positive_label = "positive",
                  std::optional<LabelColumn> label_column = std::nullopt);

// Dispatches on extension: `.dat` goes through load_keel, everything else load_csv.
Dataset load_dataset(const std::filesystem::path& path, const LabelColumn& label_column,
                     const std::string& positive_label);

// Feature-only table parsed against a known schema, used at prediction time.
// The label column is skipped when present. Unseen categories map to a code
// outside the lexicon.
struct FeatureTable {
  std::vector<double> values;
  std::size_t cols = 0;
  std::size_t rows() const { return cols == 0 ? 0 : values.size() / cols; }
  std::span<const double> row(std::size_t i) const { return {values.data() + i * cols, cols}; }
};

FeatureTable load_features(const std::filesystem::path& path,
                           const std::vector<FeatureInfo>& schema, const LabelInfo& label);

void write_csv(const Dataset& d, const std::filesystem::path& path);

struct FoldAssignment {
  std::vector<std::size_t> fold_of_row;
  std::size_t k = 0;

  std::vector<std::size_t> test_rows(std::size_t fold) const;
  std::vector<std::size_t> train_rows(std::size_t fold) const;
};

// Requires k members of each class unless `allow_sparse_class` is set, in
// which case a class with fewer members (but at least 2) leaves some folds
// without it.
FoldAssignment stratified_k_fold(const Dataset& d, std::size_t k, std::uint64_t seed,
                                 bool allow_sparse_class = false);

Dataset undersample_majority(const Dataset& d, std::uint64_t seed);
Dataset oversample_minority(const Dataset& d, std::uint64_t seed);

struct HoldoutSplit {
  Dataset train;
  Dataset holdout;
  std::vector<std::size_t> train_rows;
  std::vector<std::size_t> holdout_rows;
};

HoldoutSplit split_holdout(const Dataset& d, double fraction, std::uint64_t seed);

// Stratified subsample down to `n` rows (class ratio preserved to within one row).
Dataset stratified_subsample(const Dataset& d, std::size_t n, std::uint64_t seed);

}  // namespace ardt
