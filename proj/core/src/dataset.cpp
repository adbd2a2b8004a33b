#include "ardt/dataset.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <numeric>
#include <sstream>
#include <unordered_map>

#include "ardt/error.hpp"
#include "ardt/rng.hpp"

namespace ardt {

Dataset::Dataset(std::string name, std::vector<double> features, std::vector<Label> labels,
                 std::vector<FeatureInfo> feature_info, LabelInfo label_info)
    : name_(std::move(name)),
      features_(std::move(features)),
      labels_(std::move(labels)),
      info_(std::move(feature_info)),
      label_info_(std::move(label_info)) {
  if (labels_.empty()) throw DataError("dataset '" + name_ + "' has no rows");
  if (info_.empty()) throw DataError("dataset '" + name_ + "' has no feature columns");
  if (features_.size() != labels_.size() * info_.size()) {
    throw DataError("dataset '" + name_ + "': feature matrix size does not match rows x cols");
  }
  for (Label y : labels_) {
    if (y > 1) throw DataError("dataset '" + name_ + "': label outside {0,1}");
    positives_ += y;
  }
  const std::size_t m = info_.size();
  for (std::size_t i = 0; i < labels_.size(); ++i) {
    for (std::size_t j = 0; j < m; ++j) {
      const double v = features_[i * m + j];
      if (!std::isfinite(v)) {
        throw DataError("dataset '" + name_ + "': non-finite value at row " + std::to_string(i) +
                        ", column " + std::to_string(j));
      }
      if (info_[j].kind == FeatureKind::Categorical) {
        if (v != std::floor(v) || v < 0 || v >= static_cast<double>(info_[j].lexicon.size())) {
          throw DataError("dataset '" + name_ + "': category code outside lexicon at row " +
                          std::to_string(i) + ", column '" + info_[j].name + "'");
        }
      }
    }
  }
}

Dataset Dataset::subset(std::span<const std::size_t> indices, std::string name) const {
  const std::size_t m = cols();
  std::vector<double> feats;
  feats.reserve(indices.size() * m);
  std::vector<Label> labs;
  labs.reserve(indices.size());
  for (std::size_t i : indices) {
    if (i >= rows()) throw InvalidArgument("subset: row index out of range");
    auto r = row(i);
    feats.insert(feats.end(), r.begin(), r.end());
    labs.push_back(labels_[i]);
  }
  return Dataset(name.empty() ? name_ : std::move(name), std::move(feats), std::move(labs), info_,
                 label_info_);
}

Dataset Dataset::renamed(std::string name) const {
  Dataset copy = *this;
  copy.name_ = std::move(name);
  return copy;
}

ImbalanceRatio imbalance_ratio(const Dataset& d) {
  return {static_cast<double>(d.positives()) / static_cast<double>(d.rows())};
}

// ---------------------------------------------------------------------------
// Text parsing

namespace {

struct RawTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
  std::vector<std::size_t> line_numbers;  // 1-based file line for each row
};

std::string trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(first, last - first + 1));
}

std::vector<std::string> split_fields(const std::string& line) {
  std::vector<std::string> fields;
  std::string current;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"') {
        if (i + 1 < line.size() && line[i + 1] == '"') {
          current.push_back('"');
          ++i;
        } else {
          quoted = false;
        }
      } else {
        current.push_back(c);
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      fields.push_back(trim(current));
      current.clear();
    } else {
      current.push_back(c);
    }
  }
  fields.push_back(trim(current));
  return fields;
}

bool is_blank(const std::string& line) {
  return line.find_first_not_of(" \t\r\n") == std::string::npos;
}

std::optional<double> parse_number(const std::string& text) {
  std::string_view s = text;
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  if (s.empty()) return std::nullopt;
  double value = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc{} || ptr != s.data() + s.size() || !std::isfinite(value)) {
    return std::nullopt;
  }
  return value;
}

bool is_missing(const std::string& field) { return field.empty() || field == "?"; }

std::ifstream open_or_throw(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open file '" + path.string() + "'");
  return in;
}

RawTable read_csv_table(const std::filesystem::path& path) {
  auto in = open_or_throw(path);
  RawTable table;
  std::string line;
  std::size_t line_no = 0;
  bool have_header = false;
  while (std::getline(in, line)) {
    ++line_no;
    if (is_blank(line)) continue;
    auto fields = split_fields(line);
    if (!have_header) {
      table.header = std::move(fields);
      have_header = true;
      continue;
    }
    if (fields.size() != table.header.size()) {
      throw DataError(path.string() + ": row " + std::to_string(line_no) + " has " +
                      std::to_string(fields.size()) + " fields, header has " +
                      std::to_string(table.header.size()));
    }
    table.rows.push_back(std::move(fields));
    table.line_numbers.push_back(line_no);
  }
  if (!have_header) throw DataError(path.string() + ": empty file (no header row)");
  return table;
}

std::size_t resolve_label_column(const RawTable& table, const LabelColumn& col,
                                 const std::string& source) {
  if (col.name) {
    std::optional<std::size_t> found;
    for (std::size_t j = 0; j < table.header.size(); ++j) {
      if (table.header[j] == *col.name) {
        if (found) throw DataError(source + ": label column '" + *col.name + "' is ambiguous");
        found = j;
      }
    }
    if (found) return *found;
    if (!col.index) throw DataError(source + ": label column '" + *col.name + "' not found");
  }
  if (col.index) {
    if (*col.index >= table.header.size()) {
      throw DataError(source + ": label column index " + std::to_string(*col.index) +
                      " out of range");
    }
    return *col.index;
  }
  return table.header.size() - 1;
}

Dataset build_dataset(const RawTable& table, const LabelColumn& label_column,
                      const std::string& positive_label, const std::filesystem::path& path) {
  const std::string source = path.string();
  if (table.header.size() < 2) {
    throw DataError(source + ": need at least one feature column plus the label column");
  }
  if (table.rows.empty()) throw DataError(source + ": no data rows");
  const std::size_t label_col = resolve_label_column(table, label_column, source);

  // Label vocabulary.
  std::vector<std::string> label_values;
  for (std::size_t i = 0; i < table.rows.size(); ++i) {
    const auto& v = table.rows[i][label_col];
    if (is_missing(v)) {
      throw DataError(source + ": missing label at row " + std::to_string(table.line_numbers[i]));
    }
    if (std::find(label_values.begin(), label_values.end(), v) == label_values.end()) {
      label_values.push_back(v);
      if (label_values.size() > 2) {
        throw DataError(source + ": label column '" + table.header[label_col] +
                        "' has more than 2 distinct values (row " +
                        std::to_string(table.line_numbers[i]) + ")");
      }
    }
  }
  if (label_values.size() != 2) {
    throw DataError(source + ": label column '" + table.header[label_col] +
                    "' must have exactly 2 distinct values");
  }
  if (std::find(label_values.begin(), label_values.end(), positive_label) == label_values.end()) {
    throw DataError(source + ": positive label '" + positive_label +
                    "' does not occur in label column '" + table.header[label_col] + "'");
  }
  LabelInfo label_info{table.header[label_col], positive_label,
                       label_values[0] == positive_label ? label_values[1] : label_values[0]};

  // Column kinds: numeric iff every value parses.
  std::vector<std::size_t> feature_cols;
  for (std::size_t j = 0; j < table.header.size(); ++j) {
    if (j != label_col) feature_cols.push_back(j);
  }
  const std::size_t n = table.rows.size();
  const std::size_t m = feature_cols.size();
  std::vector<FeatureInfo> info(m);
  for (std::size_t f = 0; f < m; ++f) {
    const std::size_t j = feature_cols[f];
    info[f].name = table.header[j];
    bool numeric = true;
    for (std::size_t i = 0; i < n; ++i) {
      const auto& v = table.rows[i][j];
      if (is_missing(v)) {
        throw DataError(source + ": missing value at row " + std::to_string(table.line_numbers[i]) +
                        ", column '" + table.header[j] + "'");
      }
      if (numeric && !parse_number(v)) numeric = false;
    }
    info[f].kind = numeric ? FeatureKind::Numeric : FeatureKind::Categorical;
  }

  std::vector<double> features(n * m);
  std::vector<Label> labels(n);
  std::vector<std::unordered_map<std::string, std::size_t>> codes(m);
  for (std::size_t i = 0; i < n; ++i) {
    const auto& row = table.rows[i];
    labels[i] = row[label_col] == positive_label ? 1 : 0;
    for (std::size_t f = 0; f < m; ++f) {
      const auto& v = row[feature_cols[f]];
      if (info[f].kind == FeatureKind::Numeric) {
        features[i * m + f] = *parse_number(v);
      } else {
        auto [it, inserted] = codes[f].try_emplace(v, info[f].lexicon.size());
        if (inserted) info[f].lexicon.push_back(v);
        features[i * m + f] = static_cast<double>(it->second);
      }
    }
  }
  return Dataset(path.stem().string(), std::move(features), std::move(labels), std::move(info),
                 std::move(label_info));
}

struct KeelHeader {
  std::vector<std::string> attributes;
  std::optional<std::string> output;
};

RawTable read_keel_table(const std::filesystem::path& path, KeelHeader& header) {
  auto in = open_or_throw(path);
  RawTable table;
  std::string line;
  std::size_t line_no = 0;
  bool in_data = false;
  while (std::getline(in, line)) {
    ++line_no;
    if (is_blank(line)) continue;
    const std::string t = trim(line);
    if (t.front() == '@') {
      std::istringstream words(t);
      std::string keyword;
      words >> keyword;
      std::transform(keyword.begin(), keyword.end(), keyword.begin(),
                     [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
      if (keyword == "@attribute") {
        std::string name;
        words >> name;
        if (auto brace = name.find('{'); brace != std::string::npos) name.resize(brace);
        header.attributes.push_back(name);
      } else if (keyword == "@output" || keyword == "@outputs") {
        std::string name;
        words >> name;
        header.output = trim(name);
      } else if (keyword == "@data") {
        in_data = true;
      }
      continue;
    }
    if (!in_data && !header.attributes.empty()) {
      throw DataError(path.string() + ": data before @data at row " + std::to_string(line_no));
    }
    auto fields = split_fields(line);
    table.rows.push_back(std::move(fields));
    table.line_numbers.push_back(line_no);
  }
  if (header.attributes.empty()) {
    // Headerless file: synthesize column names.
    const std::size_t width = table.rows.empty() ? 0 : table.rows.front().size();
    for (std::size_t j = 0; j < width; ++j) header.attributes.push_back("x" + std::to_string(j));
  }
  table.header = header.attributes;
  for (std::size_t i = 0; i < table.rows.size(); ++i) {
    if (table.rows[i].size() != table.header.size()) {
      throw DataError(path.string() + ": row " + std::to_string(table.line_numbers[i]) + " has " +
                      std::to_string(table.rows[i].size()) + " fields, expected " +
                      std::to_string(table.header.size()));
    }
  }
  return table;
}

}  // namespace

LabelColumn LabelColumn::parse(const std::string& text) {
  LabelColumn col;
  col.name = text;
  std::size_t index = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), index);
  if (ec == std::errc{} && ptr == text.data() + text.size()) col.index = index;
  return col;
}

Dataset load_csv(const std::filesystem::path& path, const LabelColumn& label_column,
                 const std::string& positive_label) {
  return build_dataset(read_csv_table(path), label_column, positive_label, path);
}

Dataset load_keel(const std::filesystem::path& path, const std::string& positive_label,
                  std::optional<LabelColumn> label_column) {
  KeelHeader header;
  RawTable table = read_keel_table(path, header);
  LabelColumn col = label_column.value_or(
      header.output ? LabelColumn::by_name(*header.output) : LabelColumn::last());
  return build_dataset(table, col, positive_label, path);
}

Dataset load_dataset(const std::filesystem::path& path, const LabelColumn& label_column,
                     const std::string& positive_label) {
  if (path.extension() == ".dat") {
    const bool unspecified = !label_column.name && !label_column.index;
    return load_keel(path, positive_label,
                     unspecified ? std::nullopt : std::optional<LabelColumn>(label_column));
  }
  return load_csv(path, label_column, positive_label);
}

FeatureTable load_features(const std::filesystem::path& path,
                           const std::vector<FeatureInfo>& schema, const LabelInfo& label) {
  RawTable table;
  if (path.extension() == ".dat") {
    KeelHeader header;
    table = read_keel_table(path, header);
  } else {
    table = read_csv_table(path);
  }
  // Map schema columns to file columns by name.
  std::vector<std::size_t> source(schema.size());
  for (std::size_t f = 0; f < schema.size(); ++f) {
    auto it = std::find(table.header.begin(), table.header.end(), schema[f].name);
    if (it == table.header.end()) {
      throw DataError(path.string() + ": feature column '" + schema[f].name + "' not found");
    }
    source[f] = static_cast<std::size_t>(it - table.header.begin());
  }
  const std::size_t expected = schema.size() + (std::find(table.header.begin(), table.header.end(),
                                                          label.column) != table.header.end());
  if (table.header.size() != expected) {
    throw DataError(path.string() + ": arity mismatch, file has " +
                    std::to_string(table.header.size()) + " columns, model expects " +
                    std::to_string(schema.size()) + " features");
  }
  FeatureTable out;
  out.cols = schema.size();
  out.values.reserve(table.rows.size() * schema.size());
  for (std::size_t i = 0; i < table.rows.size(); ++i) {
    for (std::size_t f = 0; f < schema.size(); ++f) {
      const auto& v = table.rows[i][source[f]];
      if (is_missing(v)) {
        throw DataError(path.string() + ": missing value at row " +
                        std::to_string(table.line_numbers[i]) + ", column '" + schema[f].name + "'");
      }
      if (schema[f].kind == FeatureKind::Numeric) {
        auto x = parse_number(v);
        if (!x) {
          throw DataError(path.string() + ": unparseable number at row " +
                          std::to_string(table.line_numbers[i]) + ", column '" + schema[f].name +
                          "'");
        }
        out.values.push_back(*x);
      } else {
        const auto& lex = schema[f].lexicon;
        auto it = std::find(lex.begin(), lex.end(), v);
        out.values.push_back(static_cast<double>(it - lex.begin()));
      }
    }
  }
  return out;
}

void write_csv(const Dataset& d, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw DataError("cannot write '" + path.string() + "'");
  const auto& info = d.feature_info();
  for (const auto& f : info) out << f.name << ',';
  out << (d.label_info().column.empty() ? "label" : d.label_info().column) << '\n';
  out.precision(17);
  for (std::size_t i = 0; i < d.rows(); ++i) {
    auto r = d.row(i);
    for (std::size_t j = 0; j < r.size(); ++j) {
      if (info[j].kind == FeatureKind::Categorical) {
        out << info[j].lexicon[static_cast<std::size_t>(r[j])];
      } else {
        out << r[j];
      }
      out << ',';
    }
    out << (d.label(i) ? d.label_info().positive : d.label_info().negative) << '\n';
  }
}

// ---------------------------------------------------------------------------
// Folds and resampling

std::vector<std::size_t> FoldAssignment::test_rows(std::size_t fold) const {
  std::vector<std::size_t> rows;
  for (std::size_t i = 0; i < fold_of_row.size(); ++i) {
    if (fold_of_row[i] == fold) rows.push_back(i);
  }
  return rows;
}

std::vector<std::size_t> FoldAssignment::train_rows(std::size_t fold) const {
  std::vector<std::size_t> rows;
  for (std::size_t i = 0; i < fold_of_row.size(); ++i) {
    if (fold_of_row[i] != fold) rows.push_back(i);
  }
  return rows;
}

namespace {

std::pair<std::vector<std::size_t>, std::vector<std::size_t>> rows_by_class(const Dataset& d) {
  std::vector<std::size_t> neg, pos;
  for (std::size_t i = 0; i < d.rows(); ++i) (d.label(i) ? pos : neg).push_back(i);
  return {std::move(neg), std::move(pos)};
}

}  // namespace

FoldAssignment stratified_k_fold(const Dataset& d, std::size_t k, std::uint64_t seed,
                                 bool allow_sparse_class) {
  if (k < 2) throw InvalidArgument("stratified_k_fold: k must be >= 2");
  auto [neg, pos] = rows_by_class(d);
  if (d.rows() < k) {
    throw InvalidArgument("stratified_k_fold: " + std::to_string(d.rows()) + " rows cannot fill k=" +
                          std::to_string(k) + " folds");
  }
  if (allow_sparse_class) {
    if (pos.size() < 2 || neg.size() < 2) {
      throw InvalidArgument("stratified_k_fold: each class needs at least 2 members");
    }
  } else if (pos.size() < k || neg.size() < k) {
    throw InvalidArgument("stratified_k_fold: each class needs at least k=" + std::to_string(k) +
                          " members (positives " + std::to_string(pos.size()) + ", negatives " +
                          std::to_string(neg.size()) + ")");
  }
  Engine engine = make_engine(seed, "stratified_k_fold");
  shuffle<std::size_t>(pos, engine);
  shuffle<std::size_t>(neg, engine);
  FoldAssignment folds;
  folds.k = k;
  folds.fold_of_row.assign(d.rows(), 0);
  // One continuous round-robin over positives then negatives keeps both the
  // per-class counts and the total fold sizes within one of each other.
  std::size_t slot = 0;
  for (std::size_t i : pos) folds.fold_of_row[i] = slot++ % k;
  for (std::size_t i : neg) folds.fold_of_row[i] = slot++ % k;
  return folds;
}

Dataset undersample_majority(const Dataset& d, std::uint64_t seed) {
  auto [neg, pos] = rows_by_class(d);
  if (neg.empty() || pos.empty()) throw InvalidArgument("undersample_majority: single-class input");
  auto& minority = pos.size() <= neg.size() ? pos : neg;
  auto& majority = pos.size() <= neg.size() ? neg : pos;
  Engine engine = make_engine(seed, "undersample_majority");
  shuffle<std::size_t>(majority, engine);
  std::vector<std::size_t> keep(minority);
  keep.insert(keep.end(), majority.begin(), majority.begin() + static_cast<std::ptrdiff_t>(minority.size()));
  std::sort(keep.begin(), keep.end());
  return d.subset(keep);
}

Dataset oversample_minority(const Dataset& d, std::uint64_t seed) {
  auto [neg, pos] = rows_by_class(d);
  if (neg.empty() || pos.empty()) throw InvalidArgument("oversample_minority: single-class input");
  const auto& minority = pos.size() <= neg.size() ? pos : neg;
  const auto& majority = pos.size() <= neg.size() ? neg : pos;
  Engine engine = make_engine(seed, "oversample_minority");
  std::vector<std::size_t> keep(d.rows());
  std::iota(keep.begin(), keep.end(), std::size_t{0});
  for (std::size_t extra = majority.size() - minority.size(); extra > 0; --extra) {
    keep.push_back(minority[uniform_index(engine, minority.size())]);
  }
  return d.subset(keep);
}

HoldoutSplit split_holdout(const Dataset& d, double fraction, std::uint64_t seed) {
  if (!(fraction > 0.0 && fraction < 1.0)) {
    throw InvalidArgument("split_holdout: fraction must lie in (0,1)");
  }
  auto [neg, pos] = rows_by_class(d);
  if (pos.size() < 2 || neg.size() < 2) {
    throw InvalidArgument("split_holdout: each class needs at least 2 rows to appear in both parts");
  }
  const std::size_t n = d.rows();
  const auto total = static_cast<std::size_t>(std::llround(fraction * static_cast<double>(n)));
  if (total < 2 || total > n - 2) {
    throw InvalidArgument("split_holdout: fraction leaves a part without both classes");
  }
  auto hold_pos = static_cast<std::size_t>(std::llround(static_cast<double>(total) *
                                                        static_cast<double>(pos.size()) /
                                                        static_cast<double>(n)));
  hold_pos = std::clamp<std::size_t>(hold_pos, 1, pos.size() - 1);
  std::size_t hold_neg = total - std::min(hold_pos, total);
  if (hold_neg < 1) {
    hold_neg = 1;
    hold_pos = total - 1;
  }
  if (hold_neg > neg.size() - 1) {
    hold_neg = neg.size() - 1;
    hold_pos = total - hold_neg;
  }
  if (hold_pos < 1 || hold_pos > pos.size() - 1) {
    throw InvalidArgument("split_holdout: class too small for the requested fraction");
  }

  Engine engine = make_engine(seed, "split_holdout");
  shuffle<std::size_t>(pos, engine);
  shuffle<std::size_t>(neg, engine);
  HoldoutSplit out{d, d, {}, {}};
  std::vector<std::size_t> hold(pos.begin(), pos.begin() + static_cast<std::ptrdiff_t>(hold_pos));
  hold.insert(hold.end(), neg.begin(), neg.begin() + static_cast<std::ptrdiff_t>(hold_neg));
  std::sort(hold.begin(), hold.end());
  std::vector<bool> in_hold(n, false);
  for (std::size_t i : hold) in_hold[i] = true;
  std::vector<std::size_t> train;
  for (std::size_t i = 0; i < n; ++i) {
    if (!in_hold[i]) train.push_back(i);
  }
  out.train = d.subset(train);
  out.holdout = d.subset(hold);
  out.train_rows = std::move(train);
  out.holdout_rows = std::move(hold);
  return out;
}

Dataset stratified_subsample(const Dataset& d, std::size_t n, std::uint64_t seed) {
  if (n >= d.rows()) return d;
  auto [neg, pos] = rows_by_class(d);
  auto take_pos = static_cast<std::size_t>(std::llround(
      static_cast<double>(n) * static_cast<double>(pos.size()) / static_cast<double>(d.rows())));
  take_pos = std::min(take_pos, pos.size());
  if (take_pos == 0 && !pos.empty()) take_pos = 1;
  const std::size_t take_neg = std::min(n - take_pos, neg.size());
  Engine engine = make_engine(seed, "stratified_subsample");
  shuffle<std::size_t>(pos, engine);
  shuffle<std::size_t>(neg, engine);
  std::vector<std::size_t> keep(pos.begin(), pos.begin() + static_cast<std::ptrdiff_t>(take_pos));
  keep.insert(keep.end(), neg.begin(), neg.begin() + static_cast<std::ptrdiff_t>(take_neg));
  std::sort(keep.begin(), keep.end());
  return d.subset(keep);
}

}  // namespace ardt
