#include "ardt_cli/config.hpp"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <set>

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#include "ardt/methods.hpp"
#include "ardt/rng.hpp"

namespace ardt::cli {

namespace pt = boost::property_tree;

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

template <typename T>
T parse_integer(const std::string& key, const std::string& text) {
  const std::string v = trim(text);
  T out{};
  const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc{} || ptr != v.data() + v.size() || v.empty()) {
    throw ConfigError("config: '" + key + "' expects a non-negative integer, got '" + text + "'");
  }
  return out;
}

double parse_real(const std::string& key, const std::string& text) {
  const std::string v = trim(text);
  double out = 0;
  const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc{} || ptr != v.data() + v.size() || v.empty()) {
    throw ConfigError("config: '" + key + "' expects a number, got '" + text + "'");
  }
  return out;
}

bool parse_flag(const std::string& key, const std::string& text) {
  const std::string v = trim(text);
  if (v == "true" || v == "on" || v == "yes" || v == "1") return true;
  if (v == "false" || v == "off" || v == "no" || v == "0") return false;
  throw ConfigError("config: '" + key + "' expects true or false, got '" + text + "'");
}

void check_keys(const pt::ptree& section, const std::string& name,
                const std::set<std::string>& allowed) {
  for (const auto& [key, child] : section) {
    if (!child.empty()) throw ConfigError("config: nested value in section [" + name + "]");
    if (!allowed.count(key)) {
      throw ConfigError("config: unknown key '" + key + "' in section [" + name + "]");
    }
  }
}

void apply_tree(const pt::ptree& s, TreeConfig& tree) {
  check_keys(s, "tree",
             {"min_node_size", "max_depth", "min_gain", "find_alpha_step", "find_alpha_tol", "prune",
              "prune_fraction", "prune_set", "prune_metric"});
  for (const auto& [key, child] : s) {
    const std::string v = child.data();
    const std::string full = "tree." + key;
    if (key == "min_node_size") {
      tree.min_node_size = parse_integer<std::size_t>(full, v);
    } else if (key == "max_depth") {
      if (trim(v) == "none") {
        tree.max_depth.reset();
      } else {
        tree.max_depth = parse_integer<std::size_t>(full, v);
      }
    } else if (key == "min_gain") {
      tree.min_gain = parse_real(full, v);
    } else if (key == "find_alpha_step") {
      tree.find_alpha_step = parse_real(full, v);
    } else if (key == "find_alpha_tol") {
      tree.find_alpha_tol = parse_real(full, v);
    } else if (key == "prune") {
      tree.prune = parse_flag(full, v);
    } else if (key == "prune_fraction") {
      tree.prune_fraction = parse_real(full, v);
    } else if (key == "prune_set") {
      const std::string m = trim(v);
      if (m == "holdout") {
        tree.prune_set = PruneSet::Holdout;
      } else if (m == "training") {
        tree.prune_set = PruneSet::Training;
      } else {
        throw ConfigError("config: 'tree.prune_set' expects holdout or training, got '" + v + "'");
      }
    } else if (key == "prune_metric") {
      const std::string m = trim(v);
      if (m == "bcr") {
        tree.prune_metric = PruneMetric::BcrArithmetic;
      } else if (m == "bcr-geometric") {
        tree.prune_metric = PruneMetric::BcrGeometric;
      } else {
        throw ConfigError("config: 'tree.prune_metric' expects bcr or bcr-geometric, got '" + v + "'");
      }
    }
  }
}

void apply_linear(const pt::ptree& s, LinearTrainConfig& linear) {
  check_keys(s, "linear", {"solver", "learning_rate", "max_iters", "grad_tol", "l2"});
  for (const auto& [key, child] : s) {
    const std::string v = child.data();
    const std::string full = "linear." + key;
    if (key == "solver") {
      const std::string m = trim(v);
      if (m == "closed-form") {
        linear.solver = LinearSolver::ClosedForm;
      } else if (m == "gradient-descent") {
        linear.solver = LinearSolver::GradientDescent;
      } else {
        throw ConfigError("config: 'linear.solver' expects closed-form or gradient-descent, got '" +
                          v + "'");
      }
    } else if (key == "learning_rate") {
      linear.learning_rate = parse_real(full, v);
    } else if (key == "max_iters") {
      linear.max_iters = parse_integer<std::size_t>(full, v);
    } else if (key == "grad_tol") {
      linear.grad_tol = parse_real(full, v);
    } else if (key == "l2") {
      linear.l2 = parse_real(full, v);
    }
  }
}

pt::ptree read_ini(const std::filesystem::path& path) {
  if (!std::filesystem::exists(path)) throw ConfigError("config: file not found: " + path.string());
  pt::ptree root;
  try {
    pt::read_ini(path.string(), root);
  } catch (const pt::ini_parser_error& e) {
    throw ConfigError(std::string("config: ") + e.what());
  }
  return root;
}

}  // namespace

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (start <= text.size()) {
    const auto comma = text.find(',', start);
    const auto end = comma == std::string::npos ? text.size() : comma;
    const std::string item = trim(text.substr(start, end - start));
    if (!item.empty()) out.push_back(item);
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return out;
}

void RunConfig::validate() const {
  if (datasets.empty()) throw ConfigError("config: at least one [dataset.NAME] section is required");
  if (methods.empty()) throw ConfigError("config: 'run.methods' must list at least one method");
  if (k < 2) throw ConfigError("config: 'run.k' must be >= 2");
  if (jobs < 1) throw ConfigError("config: 'run.jobs' must be >= 1");
  if (!(alpha > 0 && alpha < 1)) throw ConfigError("config: 'run.alpha' must lie in (0,1)");
  std::set<std::string> seen;
  for (const auto& m : methods) {
    const auto& known = known_methods();
    if (std::find(known.begin(), known.end(), m) == known.end()) {
      throw ConfigError("config: unknown method '" + m + "' in 'run.methods'");
    }
    if (!seen.insert(m).second) throw ConfigError("config: method '" + m + "' listed twice");
  }
  try {
    tree.validate();
    linear.validate();
  } catch (const InvalidArgument& e) {
    throw ConfigError(std::string("config: ") + e.what());
  }
}

void load_hyperparameters(const std::filesystem::path& path, TreeConfig& tree,
                          LinearTrainConfig& linear) {
  const pt::ptree root = read_ini(path);
  if (const auto s = root.get_child_optional("tree")) apply_tree(*s, tree);
  if (const auto s = root.get_child_optional("linear")) apply_linear(*s, linear);
}

RunConfig load_run_config(const std::filesystem::path& path) {
  const pt::ptree root = read_ini(path);
  const auto base = path.parent_path();
  RunConfig cfg;
  for (const auto& [section, body] : root) {
    if (body.empty() && !body.data().empty()) {
      throw ConfigError("config: key '" + section + "' outside any section");
    }
    if (section == "run") {
      check_keys(body, "run", {"k", "seed", "methods", "output_dir", "jobs", "alpha"});
      for (const auto& [key, child] : body) {
        const std::string v = child.data();
        const std::string full = "run." + key;
        if (key == "k") {
          cfg.k = parse_integer<std::size_t>(full, v);
        } else if (key == "seed") {
          cfg.seed = parse_integer<std::uint64_t>(full, v);
        } else if (key == "methods") {
          cfg.methods = split_list(v);
        } else if (key == "output_dir") {
          cfg.output_dir = trim(v);
        } else if (key == "jobs") {
          cfg.jobs = parse_integer<std::size_t>(full, v);
        } else if (key == "alpha") {
          cfg.alpha = parse_real(full, v);
        }
      }
    } else if (section == "tree") {
      apply_tree(body, cfg.tree);
    } else if (section == "linear") {
      apply_linear(body, cfg.linear);
    } else if (section.rfind("dataset.", 0) == 0 && section.size() > 8) {
      DatasetEntry e;
      e.name = section.substr(8);
      check_keys(body, section, {"path", "label", "positive", "subsample", "sparse_folds"});
      const auto p = body.get_optional<std::string>("path");
      if (!p || trim(*p).empty()) throw ConfigError("config: [" + section + "] needs 'path'");
      e.path = std::filesystem::path(trim(*p));
      if (e.path.is_relative()) e.path = base / e.path;
      e.label = trim(body.get<std::string>("label", ""));
      e.positive = trim(body.get<std::string>("positive", e.positive));
      if (const auto s = body.get_optional<std::string>("subsample")) {
        e.subsample = parse_integer<std::size_t>(section + ".subsample", *s);
      }
      if (const auto s = body.get_optional<std::string>("sparse_folds")) {
        e.sparse_folds = parse_flag(section + ".sparse_folds", *s);
      }
      cfg.datasets.push_back(std::move(e));
    } else {
      throw ConfigError("config: unknown section [" + section + "]");
    }
  }
  return cfg;
}

nlohmann::json to_json(const RunConfig& cfg) {
  nlohmann::json datasets = nlohmann::json::array();
  for (const auto& d : cfg.datasets) {
    datasets.push_back({{"name", d.name},
                        {"path", d.path.filename().string()},
                        {"label", d.label},
                        {"positive", d.positive},
                        {"subsample", d.subsample ? nlohmann::json(*d.subsample) : nlohmann::json(nullptr)},
                        {"sparse_folds", d.sparse_folds}});
  }
  const auto& t = cfg.tree;
  const auto& l = cfg.linear;
  return {{"datasets", std::move(datasets)},
          {"methods", cfg.methods},
          {"k", cfg.k},
          {"seed", cfg.seed},
          {"alpha", cfg.alpha},
          {"tree",
           {{"min_node_size", t.min_node_size},
            {"max_depth", t.max_depth ? nlohmann::json(*t.max_depth) : nlohmann::json(nullptr)},
            {"min_gain", t.min_gain},
            {"find_alpha_step", t.find_alpha_step},
            {"find_alpha_tol", t.find_alpha_tol},
            {"prune", t.prune},
            {"prune_fraction", t.prune_fraction},
            {"prune_set", t.prune_set == PruneSet::Holdout ? "holdout" : "training"},
            {"prune_metric", t.prune_metric == PruneMetric::BcrArithmetic ? "bcr" : "bcr-geometric"}}},
          {"linear",
           {{"solver", l.solver == LinearSolver::ClosedForm ? "closed-form" : "gradient-descent"},
            {"learning_rate", l.learning_rate},
            {"max_iters", l.max_iters},
            {"grad_tol", l.grad_tol},
            {"l2", l.l2}}}};
}

std::string config_hash(const RunConfig& cfg) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx",
                static_cast<unsigned long long>(fnv1a64(to_json(cfg).dump())));
  return buf;
}

}  // namespace ardt::cli
