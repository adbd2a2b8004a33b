#pragma once

#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <vector>

#include "ardt/dataset.hpp"
#include "ardt/split_criteria.hpp"

namespace ardt {

// Where the pruning rows come from.
enum class PruneSet {
  Holdout,   // stratified carve-out of prune_fraction; the tree grows on the rest
  Training,  // the tree grows on all rows and is pruned against them
};

enum class PruneMetric {
  BcrArithmetic,  // (sensitivity + specificity) / 2
  BcrGeometric,   // sqrt(sensitivity * specificity)
};

struct TreeConfig {
  Criterion criterion = Criterion::Shannon;
  double fixed_alpha = 1.0;  // only read for Criterion::FixedRenyi
  std::size_t min_node_size = 2;
  std::optional<std::size_t> max_depth = 30;  // nullopt = unbounded
  double min_gain = 0.0;
  double find_alpha_step = 0.01;
  double find_alpha_tol = 1e-3;
  bool prune = true;
  double prune_fraction = 0.2;  // only read for PruneSet::Holdout
  PruneSet prune_set = PruneSet::Holdout;
  PruneMetric prune_metric = PruneMetric::BcrArithmetic;
  std::uint64_t seed = 0;

  void validate() const;
};

enum class SplitKind { Numeric, Categorical };

struct SplitCandidate {
  std::size_t feature = 0;
  SplitKind kind = SplitKind::Numeric;
  double value = 0;  // threshold for numeric splits, category code otherwise
  double gain = 0;
  ClassDistribution left;
  ClassDistribution right;
};

// Best split of the given rows under `criterion` (alpha is the Rényi
// parameter for the Rényi criteria). Ties go to the lower feature index, then
// the lower threshold / code. Returns nullopt when no split leaves both sides
// non-empty.
std::optional<SplitCandidate> best_split(const Dataset& d, std::span<const std::size_t> rows,
                                         Criterion criterion, double alpha);

// One node of a tree. Nodes are stored in pre-order, so children always have
// larger ids than their parent.
struct TreeNode {
  bool leaf = true;
  ClassDistribution counts;  // training rows reaching the node
  Label label = 1;           // majority of counts, ties -> 1

  // Split fields, meaningful for internal nodes only.
  std::size_t feature = 0;
  SplitKind kind = SplitKind::Numeric;
  double value = 0;
  double gain = 0;
  std::optional<double> alpha_used;  // set iff the tree is adaptive-renyi
  std::int32_t left = -1;
  std::int32_t right = -1;

  friend bool operator==(const TreeNode&, const TreeNode&) = default;
};

Label majority_label(const ClassDistribution& counts);

class DecisionTree {
 public:
  DecisionTree() = default;
  DecisionTree(std::vector<TreeNode> nodes, std::size_t arity, Criterion criterion,
               double fixed_alpha = 1.0);

  Label predict(std::span<const double> x) const;
  // Id of the leaf that `x` reaches.
  std::size_t leaf_of(std::span<const double> x) const;

  const std::vector<TreeNode>& nodes() const { return nodes_; }
  const TreeNode& root() const { return nodes_.front(); }
  std::size_t arity() const { return arity_; }
  Criterion criterion() const { return criterion_; }
  double fixed_alpha() const { return fixed_alpha_; }

  std::size_t node_count() const { return nodes_.size(); }
  std::size_t leaf_count() const;
  std::size_t depth() const;

  friend bool operator==(const DecisionTree&, const DecisionTree&) = default;

 private:
  std::vector<TreeNode> nodes_;
  std::size_t arity_ = 0;
  Criterion criterion_ = Criterion::Shannon;
  double fixed_alpha_ = 1.0;
};

// Same splits and same leaves, ignoring gains and recorded alphas.
bool same_structure(const DecisionTree& a, const DecisionTree& b);

// Grows a tree on all of `d` without pruning.
DecisionTree grow(const Dataset& d, const TreeConfig& cfg);

// Full training: grows the tree and, when cfg.prune is on, applies prune_bcr
// against the rows selected by cfg.prune_set.
DecisionTree train(const Dataset& d, const TreeConfig& cfg);

// Reduced-error pruning under the balanced classification rate. Visits nodes
// in post-order and collapses a subtree into its majority leaf whenever that
// does not lower the pruning-set score.
DecisionTree prune_bcr(const DecisionTree& tree, const Dataset& prune_set,
                       PruneMetric metric = PruneMetric::BcrArithmetic);

struct EnsembleModel {
  std::vector<DecisionTree> trees;
  std::vector<double> alphas;

  friend bool operator==(const EnsembleModel&, const EnsembleModel&) = default;
};

inline const std::vector<double>& default_eat_alphas() {
  static const std::vector<double> grid{0.1, 0.25, 0.5, 0.75, 1.0, 2.0, 4.0};
  return grid;
}

// One fixed-alpha Rényi tree per grid value, all grown on the same training
// part and pruned with the same pruning set.
EnsembleModel train_eat(const Dataset& d, std::span<const double> alpha_grid,
                        const TreeConfig& cfg);

// Unweighted majority vote; an exact tie predicts 1.
Label predict_ensemble(const EnsembleModel& e, std::span<const double> x);

}  // namespace ardt
