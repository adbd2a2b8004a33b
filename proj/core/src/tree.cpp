#include "ardt/tree.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <string>

#include "ardt/error.hpp"
#include "ardt/metrics.hpp"
#include "ardt/rng.hpp"

namespace ardt {

namespace {

// Gains closer than this are treated as equal, so float noise cannot override
// the deterministic tie-break order.
constexpr double kGainEps = 1e-12;

double split_score(Criterion criterion, double alpha, double parent_impurity,
                   const ClassDistribution& parent, const ClassDistribution& left,
                   const ClassDistribution& right) {
  if (criterion == Criterion::Hellinger) return hellinger_split_value(left, right, parent);
  const double n = parent.total();
  return parent_impurity - (left.total() / n * impurity(criterion, left, alpha) +
                            right.total() / n * impurity(criterion, right, alpha));
}

ClassDistribution count_rows(const Dataset& d, std::span<const std::size_t> rows) {
  ClassDistribution c;
  for (std::size_t i : rows) (d.label(i) ? c.count1 : c.count0) += 1;
  return c;
}

double midpoint(double a, double b) {
  double mid = a + (b - a) / 2;
  // Equal-to-threshold goes left, so the midpoint must stay strictly below b.
  if (!(mid < b)) mid = a;
  return mid;
}

}  // namespace

void TreeConfig::validate() const {
  if (!(prune_fraction > 0 && prune_fraction < 1)) {
    throw InvalidArgument("tree config: prune_fraction must lie in (0,1)");
  }
  if (min_node_size < 1) throw InvalidArgument("tree config: min_node_size must be >= 1");
  if (!(min_gain >= 0)) throw InvalidArgument("tree config: min_gain must be >= 0");
  if (!(find_alpha_step > 0 && find_alpha_step < 1)) {
    throw InvalidArgument("tree config: find_alpha_step must lie in (0,1)");
  }
  if (!(find_alpha_tol > 0)) throw InvalidArgument("tree config: find_alpha_tol must be > 0");
  if (criterion == Criterion::FixedRenyi && !(fixed_alpha >= 0)) {
    throw InvalidArgument("tree config: fixed alpha must be >= 0");
  }
}

Label majority_label(const ClassDistribution& counts) {
  return counts.count1 >= counts.count0 ? 1 : 0;
}

std::optional<SplitCandidate> best_split(const Dataset& d, std::span<const std::size_t> rows,
                                         Criterion criterion, double alpha) {
  const ClassDistribution parent = count_rows(d, rows);
  const double parent_impurity =
      criterion == Criterion::Hellinger ? 0.0 : impurity(criterion, parent, alpha);
  std::optional<SplitCandidate> best;
  auto consider = [&](std::size_t feature, SplitKind kind, double value,
                      const ClassDistribution& left) {
    const ClassDistribution right = parent - left;
    const double score = split_score(criterion, alpha, parent_impurity, parent, left, right);
    if (!best || score > best->gain + kGainEps) {
      best = SplitCandidate{feature, kind, value, score, left, right};
    }
  };

  std::vector<std::pair<double, Label>> column(rows.size());
  for (std::size_t f = 0; f < d.cols(); ++f) {
    for (std::size_t r = 0; r < rows.size(); ++r) column[r] = {d.at(rows[r], f), d.label(rows[r])};
    if (d.feature_info()[f].kind == FeatureKind::Numeric) {
      std::sort(column.begin(), column.end(),
                [](const auto& a, const auto& b) { return a.first < b.first; });
      ClassDistribution left;
      for (std::size_t r = 0; r + 1 < column.size(); ++r) {
        (column[r].second ? left.count1 : left.count0) += 1;
        if (column[r].first < column[r + 1].first) {
          consider(f, SplitKind::Numeric, midpoint(column[r].first, column[r + 1].first), left);
        }
      }
    } else {
      std::map<double, ClassDistribution> by_code;
      for (const auto& [v, y] : column) (y ? by_code[v].count1 : by_code[v].count0) += 1;
      if (by_code.size() < 2) continue;
      for (const auto& [code, dist] : by_code) consider(f, SplitKind::Categorical, code, dist);
    }
  }
  return best;
}

// ---------------------------------------------------------------------------

DecisionTree::DecisionTree(std::vector<TreeNode> nodes, std::size_t arity, Criterion criterion,
                           double fixed_alpha)
    : nodes_(std::move(nodes)), arity_(arity), criterion_(criterion), fixed_alpha_(fixed_alpha) {
  if (nodes_.empty()) throw InvalidArgument("decision tree needs at least one node");
  for (std::size_t i = 0; i < nodes_.size(); ++i) {
    const auto& n = nodes_[i];
    if (n.leaf) continue;
    const auto size = static_cast<std::int32_t>(nodes_.size());
    const auto id = static_cast<std::int32_t>(i);
    if (n.left <= id || n.right <= id || n.left >= size || n.right >= size) {
      throw InvalidArgument("decision tree: node " + std::to_string(i) +
                            " has child ids outside pre-order range");
    }
    if (n.feature >= arity_) {
      throw InvalidArgument("decision tree: node " + std::to_string(i) +
                            " splits on a feature beyond the arity");
    }
  }
}

std::size_t DecisionTree::leaf_of(std::span<const double> x) const {
  if (x.size() != arity_) {
    throw InvalidArgument("predict: feature vector has " + std::to_string(x.size()) +
                          " values, tree expects " + std::to_string(arity_));
  }
  std::size_t id = 0;
  while (!nodes_[id].leaf) {
    const auto& n = nodes_[id];
    const double v = x[n.feature];
    const bool go_left = n.kind == SplitKind::Numeric ? v <= n.value : v == n.value;
    id = static_cast<std::size_t>(go_left ? n.left : n.right);
  }
  return id;
}

Label DecisionTree::predict(std::span<const double> x) const { return nodes_[leaf_of(x)].label; }

std::size_t DecisionTree::leaf_count() const {
  return static_cast<std::size_t>(
      std::count_if(nodes_.begin(), nodes_.end(), [](const TreeNode& n) { return n.leaf; }));
}

std::size_t DecisionTree::depth() const {
  std::vector<std::size_t> depth_of(nodes_.size(), 0);
  std::size_t deepest = 0;
  for (std::size_t i = 0; i < nodes_.size(); ++i) {
    deepest = std::max(deepest, depth_of[i]);
    if (!nodes_[i].leaf) {
      depth_of[static_cast<std::size_t>(nodes_[i].left)] = depth_of[i] + 1;
      depth_of[static_cast<std::size_t>(nodes_[i].right)] = depth_of[i] + 1;
    }
  }
  return deepest;
}

bool same_structure(const DecisionTree& a, const DecisionTree& b) {
  if (a.node_count() != b.node_count() || a.arity() != b.arity()) return false;
  for (std::size_t i = 0; i < a.node_count(); ++i) {
    const auto& x = a.nodes()[i];
    const auto& y = b.nodes()[i];
    if (x.leaf != y.leaf || x.counts != y.counts || x.label != y.label) return false;
    if (!x.leaf && (x.feature != y.feature || x.kind != y.kind || x.value != y.value ||
                    x.left != y.left || x.right != y.right)) {
      return false;
    }
  }
  return true;
}

// ---------------------------------------------------------------------------

DecisionTree grow(const Dataset& d, const TreeConfig& cfg) {
  cfg.validate();
  if (d.positives() == 0 || d.negatives() == 0) {
    throw DataError("tree training needs both classes in '" + d.name() + "'");
  }
  const std::size_t max_depth = cfg.max_depth.value_or(std::numeric_limits<std::size_t>::max());

  struct Task {
    std::vector<std::size_t> rows;
    std::size_t depth;
    std::int32_t parent;
    bool is_left;
  };
  std::vector<TreeNode> nodes;
  std::vector<Task> stack;
  std::vector<std::size_t> all(d.rows());
  std::iota(all.begin(), all.end(), std::size_t{0});
  stack.push_back({std::move(all), 0, -1, false});

  while (!stack.empty()) {
    Task task = std::move(stack.back());
    stack.pop_back();
    const auto id = static_cast<std::int32_t>(nodes.size());
    if (task.parent >= 0) {
      auto& p = nodes[static_cast<std::size_t>(task.parent)];
      (task.is_left ? p.left : p.right) = id;
    }
    TreeNode node;
    node.counts = count_rows(d, task.rows);
    node.label = majority_label(node.counts);

    const bool stop = node.counts.pure() || task.rows.size() < cfg.min_node_size ||
                      task.depth >= max_depth;
    std::optional<SplitCandidate> split;
    double alpha = 1.0;
    if (!stop) {
      if (cfg.criterion == Criterion::AdaptiveRenyi) {
        alpha = find_alpha(node.counts, cfg.find_alpha_step, cfg.find_alpha_tol).alpha;
      } else if (cfg.criterion == Criterion::FixedRenyi) {
        alpha = cfg.fixed_alpha;
      }
      split = best_split(d, task.rows, cfg.criterion, alpha);
      if (split && !(split->gain > cfg.min_gain + kGainEps)) split.reset();
    }
    if (!split) {
      nodes.push_back(node);
      continue;
    }

    node.leaf = false;
    node.feature = split->feature;
    node.kind = split->kind;
    node.value = split->value;
    node.gain = split->gain;
    if (cfg.criterion == Criterion::AdaptiveRenyi) node.alpha_used = alpha;
    nodes.push_back(node);

    std::vector<std::size_t> left_rows, right_rows;
    for (std::size_t i : task.rows) {
      const double v = d.at(i, split->feature);
      const bool go_left = split->kind == SplitKind::Numeric ? v <= split->value : v == split->value;
      (go_left ? left_rows : right_rows).push_back(i);
    }
    // Right pushed first so the left subtree is numbered next (pre-order).
    stack.push_back({std::move(right_rows), task.depth + 1, id, false});
    stack.push_back({std::move(left_rows), task.depth + 1, id, true});
  }
  return DecisionTree(std::move(nodes), d.cols(), cfg.criterion, cfg.fixed_alpha);
}

DecisionTree train(const Dataset& d, const TreeConfig& cfg) {
  cfg.validate();
  if (d.positives() == 0 || d.negatives() == 0) {
    throw DataError("tree training needs both classes in '" + d.name() + "'");
  }
  if (!cfg.prune) return grow(d, cfg);
  if (cfg.prune_set == PruneSet::Training) return prune_bcr(grow(d, cfg), d, cfg.prune_metric);
  auto split = split_holdout(d, cfg.prune_fraction, derive_seed(cfg.seed, "prune-split"));
  return prune_bcr(grow(split.train, cfg), split.holdout, cfg.prune_metric);
}

// ---------------------------------------------------------------------------

namespace {

double prune_score(const ConfusionMatrix& cm, PruneMetric metric) {
  return metric == PruneMetric::BcrArithmetic ? bcr(cm) : bcr_geometric(cm);
}

// Copies the nodes reachable from the root, skipping children of collapsed
// nodes, and renumbers them in pre-order.
std::vector<TreeNode> compact(const std::vector<TreeNode>& nodes) {
  std::vector<TreeNode> out;
  struct Item {
    std::size_t old_id;
    std::int32_t parent;
    bool is_left;
  };
  std::vector<Item> stack{{0, -1, false}};
  while (!stack.empty()) {
    Item it = stack.back();
    stack.pop_back();
    const auto id = static_cast<std::int32_t>(out.size());
    if (it.parent >= 0) {
      auto& p = out[static_cast<std::size_t>(it.parent)];
      (it.is_left ? p.left : p.right) = id;
    }
    TreeNode n = nodes[it.old_id];
    if (!n.leaf) {
      stack.push_back({static_cast<std::size_t>(n.right), id, false});
      stack.push_back({static_cast<std::size_t>(n.left), id, true});
    }
    out.push_back(n);
  }
  return out;
}

}  // namespace

DecisionTree prune_bcr(const DecisionTree& tree, const Dataset& prune_set, PruneMetric metric) {
  if (prune_set.cols() != tree.arity()) {
    throw InvalidArgument("prune_bcr: pruning set arity does not match the tree");
  }
  std::vector<TreeNode> nodes = tree.nodes();
  const std::size_t n_nodes = nodes.size();
  const std::size_t n_rows = prune_set.rows();

  // Rows reaching each node; routing above a node never changes while pruning.
  std::vector<std::vector<std::size_t>> reach(n_nodes);
  std::vector<Label> pred(n_rows);
  for (std::size_t r = 0; r < n_rows; ++r) {
    auto x = prune_set.row(r);
    std::size_t id = 0;
    reach[0].push_back(r);
    while (!nodes[id].leaf) {
      const auto& n = nodes[id];
      const bool go_left = n.kind == SplitKind::Numeric ? x[n.feature] <= n.value
                                                        : x[n.feature] == n.value;
      id = static_cast<std::size_t>(go_left ? n.left : n.right);
      reach[id].push_back(r);
    }
    pred[r] = nodes[id].label;
  }
  ConfusionMatrix cm;
  for (std::size_t r = 0; r < n_rows; ++r) cm.add(prune_set.label(r), pred[r]);

  // Reverse pre-order visits every child before its parent.
  for (std::size_t k = n_nodes; k-- > 0;) {
    auto& node = nodes[k];
    if (node.leaf) continue;
    ConfusionMatrix candidate = cm;
    for (std::size_t r : reach[k]) {
      const Label y = prune_set.label(r);
      // Remove the current prediction, add the collapsed one.
      if (y) {
        --(pred[r] ? candidate.tp : candidate.fn);
        ++(node.label ? candidate.tp : candidate.fn);
      } else {
        --(pred[r] ? candidate.fp : candidate.tn);
        ++(node.label ? candidate.fp : candidate.tn);
      }
    }
    // Ties prefer the smaller tree.
    if (prune_score(candidate, metric) >= prune_score(cm, metric)) {
      TreeNode leaf;
      leaf.counts = node.counts;
      leaf.label = node.label;
      node = leaf;
      cm = candidate;
      for (std::size_t r : reach[k]) pred[r] = node.label;
    }
  }
  return DecisionTree(compact(nodes), tree.arity(), tree.criterion(), tree.fixed_alpha());
}

// ---------------------------------------------------------------------------

EnsembleModel train_eat(const Dataset& d, std::span<const double> alpha_grid,
                        const TreeConfig& cfg) {
  if (alpha_grid.empty()) throw InvalidArgument("train_eat: alpha grid is empty");
  cfg.validate();
  if (d.positives() == 0 || d.negatives() == 0) {
    throw DataError("tree training needs both classes in '" + d.name() + "'");
  }
  std::optional<HoldoutSplit> split;
  if (cfg.prune && cfg.prune_set == PruneSet::Holdout) split = split_holdout(d, cfg.prune_fraction, derive_seed(cfg.seed, "prune-split"));
  EnsembleModel model;
  for (double alpha : alpha_grid) {
    TreeConfig member = cfg;
    member.criterion = Criterion::FixedRenyi;
    member.fixed_alpha = alpha;
    DecisionTree t = split  ? prune_bcr(grow(split->train, member), split->holdout, cfg.prune_metric)
                     : cfg.prune ? prune_bcr(grow(d, member), d, cfg.prune_metric)
                                 : grow(d, member);
    model.trees.push_back(std::move(t));
    model.alphas.push_back(alpha);
  }
  return model;
}

Label predict_ensemble(const EnsembleModel& e, std::span<const double> x) {
  if (e.trees.empty()) throw InvalidArgument("predict_ensemble: empty ensemble");
  std::size_t ones = 0;
  for (const auto& t : e.trees) ones += t.predict(x);
  return 2 * ones >= e.trees.size() ? 1 : 0;
}

}  // namespace ardt
