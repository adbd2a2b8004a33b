#include "ardt/model_io.hpp"

#include <fstream>
#include <string>

#include "ardt/error.hpp"
#include "ardt/version.hpp"

namespace ardt {

using nlohmann::json;

namespace {

constexpr const char* kFormatName = "ardt-model";

[[noreturn]] void fail(const std::string& path, const std::string& what) {
  throw ModelFormatError("model file: field '" + path + "' " + what);
}

const json& field(const json& obj, const std::string& key, const std::string& path) {
  if (!obj.is_object()) fail(path, "must be an object");
  const auto it = obj.find(key);
  if (it == obj.end()) fail(path + "/" + key, "is missing");
  return *it;
}

double get_number(const json& obj, const std::string& key, const std::string& path) {
  const json& v = field(obj, key, path);
  if (!v.is_number()) fail(path + "/" + key, "must be a number");
  return v.get<double>();
}

std::size_t get_index(const json& obj, const std::string& key, const std::string& path) {
  const json& v = field(obj, key, path);
  if (!v.is_number_integer() || v.get<std::int64_t>() < 0) {
    fail(path + "/" + key, "must be a non-negative integer");
  }
  return v.get<std::size_t>();
}

std::string get_string(const json& obj, const std::string& key, const std::string& path) {
  const json& v = field(obj, key, path);
  if (!v.is_string()) fail(path + "/" + key, "must be a string");
  return v.get<std::string>();
}

bool get_bool(const json& obj, const std::string& key, const std::string& path) {
  const json& v = field(obj, key, path);
  if (!v.is_boolean()) fail(path + "/" + key, "must be a boolean");
  return v.get<bool>();
}

const json& get_array(const json& obj, const std::string& key, const std::string& path) {
  const json& v = field(obj, key, path);
  if (!v.is_array()) fail(path + "/" + key, "must be an array");
  return v;
}

json tree_to_json(const DecisionTree& tree) {
  json nodes = json::array();
  for (const auto& n : tree.nodes()) {
    json j;
    j["kind"] = n.leaf ? "leaf" : "split";
    j["counts"] = {n.counts.count0, n.counts.count1};
    j["label"] = n.label;
    if (!n.leaf) {
      j["feature"] = n.feature;
      if (n.kind == SplitKind::Numeric) {
        j["split"] = "numeric";
        j["threshold"] = n.value;
      } else {
        j["split"] = "categorical";
        j["category"] = static_cast<std::size_t>(n.value);
      }
      j["gain"] = n.gain;
      j["alpha_used"] = n.alpha_used ? json(*n.alpha_used) : json(nullptr);
      j["left"] = n.left;
      j["right"] = n.right;
    }
    nodes.push_back(std::move(j));
  }
  return {{"criterion", std::string(to_string(tree.criterion()))},
          {"fixed_alpha", tree.fixed_alpha()},
          {"arity", tree.arity()},
          {"nodes", std::move(nodes)}};
}

DecisionTree tree_from_json(const json& j, const std::string& path, std::size_t arity) {
  const std::string crit_name = get_string(j, "criterion", path);
  Criterion criterion;
  try {
    criterion = criterion_from_string(crit_name);
  } catch (const InvalidArgument&) {
    fail(path + "/criterion", "has unknown value '" + crit_name + "'");
  }
  const double fixed_alpha = get_number(j, "fixed_alpha", path);
  if (get_index(j, "arity", path) != arity) {
    fail(path + "/arity", "does not match the feature list");
  }
  const json& arr = get_array(j, "nodes", path);
  if (arr.empty()) fail(path + "/nodes", "must not be empty");

  std::vector<TreeNode> nodes;
  nodes.reserve(arr.size());
  for (std::size_t i = 0; i < arr.size(); ++i) {
    const std::string np = path + "/nodes/" + std::to_string(i);
    const json& jn = arr[i];
    TreeNode n;
    const std::string kind = get_string(jn, "kind", np);
    if (kind != "leaf" && kind != "split") fail(np + "/kind", "must be 'leaf' or 'split'");
    n.leaf = kind == "leaf";

    const json& counts = get_array(jn, "counts", np);
    if (counts.size() != 2 || !counts[0].is_number() || !counts[1].is_number()) {
      fail(np + "/counts", "must be two numbers");
    }
    n.counts = {counts[0].get<double>(), counts[1].get<double>()};
    const std::size_t label = get_index(jn, "label", np);
    if (label > 1) fail(np + "/label", "must be 0 or 1");
    n.label = static_cast<Label>(label);

    if (!n.leaf) {
      n.feature = get_index(jn, "feature", np);
      if (n.feature >= arity) fail(np + "/feature", "is beyond the feature count");
      const std::string split = get_string(jn, "split", np);
      if (split == "numeric") {
        n.kind = SplitKind::Numeric;
        n.value = get_number(jn, "threshold", np);
      } else if (split == "categorical") {
        n.kind = SplitKind::Categorical;
        n.value = static_cast<double>(get_index(jn, "category", np));
      } else {
        fail(np + "/split", "must be 'numeric' or 'categorical'");
      }
      n.gain = get_number(jn, "gain", np);
      const json& a = field(jn, "alpha_used", np);
      if (a.is_number()) {
        n.alpha_used = a.get<double>();
      } else if (!a.is_null()) {
        fail(np + "/alpha_used", "must be a number or null");
      }
      if ((criterion == Criterion::AdaptiveRenyi) != n.alpha_used.has_value()) {
        fail(np + "/alpha_used", "must be present exactly for adaptive-renyi trees");
      }
      const std::size_t left = get_index(jn, "left", np);
      const std::size_t right = get_index(jn, "right", np);
      if (left <= i || left >= arr.size()) fail(np + "/left", "is not a later node id");
      if (right <= i || right >= arr.size()) fail(np + "/right", "is not a later node id");
      n.left = static_cast<std::int32_t>(left);
      n.right = static_cast<std::int32_t>(right);
    }
    nodes.push_back(std::move(n));
  }
  return DecisionTree(std::move(nodes), arity, criterion, fixed_alpha);
}

json linear_to_json(const LinearModel& m) {
  return {{"link", std::string(to_string(m.link))},
          {"weights", m.weights},
          {"intercept", m.intercept},
          {"threshold", m.threshold},
          {"diagnostics",
           {{"solver", m.diagnostics.solver},
            {"converged", m.diagnostics.converged},
            {"iterations", m.diagnostics.iterations},
            {"gradient_norm", m.diagnostics.gradient_norm},
            {"singular_fallback", m.diagnostics.singular_fallback}}}};
}

LinearModel linear_from_json(const json& j, const std::string& path,
                             const std::vector<FeatureInfo>& features) {
  LinearModel m;
  const std::string link = get_string(j, "link", path);
  if (link == "identity") {
    m.link = Link::Identity;
  } else if (link == "logistic") {
    m.link = Link::Logistic;
  } else {
    fail(path + "/link", "must be 'identity' or 'logistic'");
  }
  m.encoder = FeatureEncoder(features);
  const json& w = get_array(j, "weights", path);
  if (w.size() != m.encoder.output_arity()) {
    fail(path + "/weights", "has " + std::to_string(w.size()) + " entries, features need " +
                                std::to_string(m.encoder.output_arity()));
  }
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (!w[i].is_number()) fail(path + "/weights/" + std::to_string(i), "must be a number");
    m.weights.push_back(w[i].get<double>());
  }
  m.intercept = get_number(j, "intercept", path);
  m.threshold = get_number(j, "threshold", path);
  const std::string dp = path + "/diagnostics";
  const json& d = field(j, "diagnostics", path);
  m.diagnostics.solver = get_string(d, "solver", dp);
  m.diagnostics.converged = get_bool(d, "converged", dp);
  m.diagnostics.iterations = get_index(d, "iterations", dp);
  m.diagnostics.gradient_norm = get_number(d, "gradient_norm", dp);
  m.diagnostics.singular_fallback = get_bool(d, "singular_fallback", dp);
  return m;
}

}  // namespace

json model_to_json(const FittedModel& model) {
  json features = json::array();
  for (const auto& f : model.features()) {
    features.push_back({{"name", f.name},
                        {"kind", f.kind == FeatureKind::Numeric ? "numeric" : "categorical"},
                        {"lexicon", f.lexicon}});
  }
  json doc{{"format", kFormatName},
           {"format_version", kModelFormatVersion},
           {"library_version", std::string(kVersion)},
           {"method", model.method()},
           {"features", std::move(features)},
           {"label",
            {{"column", model.label().column},
             {"positive", model.label().positive},
             {"negative", model.label().negative}}}};

  std::visit(
      [&](const auto& m) {
        using T = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<T, DecisionTree>) {
          doc["kind"] = "tree";
          doc["model"] = tree_to_json(m);
        } else if constexpr (std::is_same_v<T, EnsembleModel>) {
          doc["kind"] = "ensemble";
          json trees = json::array();
          for (const auto& t : m.trees) trees.push_back(tree_to_json(t));
          doc["model"] = {{"alphas", m.alphas}, {"trees", std::move(trees)}};
        } else {
          doc["kind"] = "linear";
          doc["model"] = linear_to_json(m);
        }
      },
      model.model());
  return doc;
}

FittedModel model_from_json(const json& doc) {
  if (!doc.is_object()) fail("", "document must be a JSON object");
  if (get_string(doc, "format", "") != kFormatName) fail("/format", "is not 'ardt-model'");
  const json& version = field(doc, "format_version", "");
  if (!version.is_number_integer() || version.get<int>() != kModelFormatVersion) {
    fail("/format_version", "is unsupported (expected " + std::to_string(kModelFormatVersion) + ")");
  }
  const std::string method = get_string(doc, "method", "");

  std::vector<FeatureInfo> features;
  const json& jf = get_array(doc, "features", "");
  if (jf.empty()) fail("/features", "must not be empty");
  for (std::size_t i = 0; i < jf.size(); ++i) {
    const std::string fp = "/features/" + std::to_string(i);
    FeatureInfo f;
    f.name = get_string(jf[i], "name", fp);
    const std::string kind = get_string(jf[i], "kind", fp);
    if (kind == "numeric") {
      f.kind = FeatureKind::Numeric;
    } else if (kind == "categorical") {
      f.kind = FeatureKind::Categorical;
    } else {
      fail(fp + "/kind", "must be 'numeric' or 'categorical'");
    }
    const json& lex = get_array(jf[i], "lexicon", fp);
    for (std::size_t c = 0; c < lex.size(); ++c) {
      if (!lex[c].is_string()) fail(fp + "/lexicon/" + std::to_string(c), "must be a string");
      f.lexicon.push_back(lex[c].get<std::string>());
    }
    features.push_back(std::move(f));
  }

  const json& jl = field(doc, "label", "");
  LabelInfo label{get_string(jl, "column", "/label"), get_string(jl, "positive", "/label"),
                  get_string(jl, "negative", "/label")};

  const std::string kind = get_string(doc, "kind", "");
  const json& jm = field(doc, "model", "");
  if (kind == "tree") {
    return FittedModel(method, tree_from_json(jm, "/model", features.size()), features, label);
  }
  if (kind == "ensemble") {
    EnsembleModel e;
    const json& alphas = get_array(jm, "alphas", "/model");
    const json& trees = get_array(jm, "trees", "/model");
    if (trees.empty()) fail("/model/trees", "must not be empty");
    if (alphas.size() != trees.size()) fail("/model/alphas", "must have one entry per tree");
    for (std::size_t i = 0; i < trees.size(); ++i) {
      if (!alphas[i].is_number()) fail("/model/alphas/" + std::to_string(i), "must be a number");
      e.alphas.push_back(alphas[i].get<double>());
      e.trees.push_back(
          tree_from_json(trees[i], "/model/trees/" + std::to_string(i), features.size()));
    }
    return FittedModel(method, std::move(e), features, label);
  }
  if (kind == "linear") {
    return FittedModel(method, linear_from_json(jm, "/model", features), features, label);
  }
  fail("/kind", "must be 'tree', 'ensemble' or 'linear'");
}

void save_model(const FittedModel& model, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write model file " + path.string());
  out << model_to_json(model).dump(2) << '\n';
  if (!out) throw Error("failed writing model file " + path.string());
}

FittedModel load_model(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ModelFormatError("cannot open model file " + path.string());
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ModelFormatError("model file " + path.string() + " is not valid JSON: " + e.what());
  }
  return model_from_json(doc);
}

}  // namespace ardt
