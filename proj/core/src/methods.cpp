#include "ardt/methods.hpp"

#include <algorithm>

#include "ardt/error.hpp"
#include "ardt/rng.hpp"

namespace ardt {

Label FittedModel::predict(std::span<const double> x) const {
  return std::visit(
      [&](const auto& m) -> Label {
        using T = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<T, DecisionTree>) {
          return m.predict(x);
        } else if constexpr (std::is_same_v<T, EnsembleModel>) {
          return predict_ensemble(m, x);
        } else {
          return classify(m, x);
        }
      },
      model_);
}

namespace {

enum class Rebalance { None, CostSensitive, Undersample, Oversample, Threshold };

class LinearMethod final : public Method {
 public:
  LinearMethod(std::string name, Link link, Rebalance rebalance, LinearTrainConfig cfg)
      : name_(std::move(name)), link_(link), rebalance_(rebalance), cfg_(cfg) {}

  const std::string& name() const override { return name_; }

  FittedModel fit(const Dataset& train, std::uint64_t seed) const override {
    LinearTrainConfig cfg = cfg_;
    cfg.seed = derive_seed(seed, "init");
    const ImbalanceRatio mu = imbalance_ratio(train);
    const Dataset* data = &train;
    std::optional<Dataset> resampled;
    switch (rebalance_) {
      case Rebalance::CostSensitive: cfg.instance_weights = cost_weights(mu); break;
      case Rebalance::Undersample:
        resampled = undersample_majority(train, derive_seed(seed, "resample"));
        data = &*resampled;
        break;
      case Rebalance::Oversample:
        resampled = oversample_minority(train, derive_seed(seed, "resample"));
        data = &*resampled;
        break;
      case Rebalance::None:
      case Rebalance::Threshold: break;
    }
    LinearModel model = link_ == Link::Logistic ? fit_logistic_regression(*data, cfg)
                                                : fit_linear_regression(*data, cfg);
    model.threshold = rebalance_ == Rebalance::Threshold ? threshold_from_imbalance(mu) : 0.5;
    return FittedModel(name_, std::move(model), train.feature_info(), train.label_info());
  }

 private:
  std::string name_;
  Link link_;
  Rebalance rebalance_;
  LinearTrainConfig cfg_;
};

class TreeMethod final : public Method {
 public:
  TreeMethod(std::string name, TreeConfig cfg) : name_(std::move(name)), cfg_(cfg) {}

  const std::string& name() const override { return name_; }

  FittedModel fit(const Dataset& train, std::uint64_t seed) const override {
    TreeConfig cfg = cfg_;
    cfg.seed = seed;
    return FittedModel(name_, train_tree(train, cfg), train.feature_info(), train.label_info());
  }

 private:
  static DecisionTree train_tree(const Dataset& d, const TreeConfig& cfg) { return train(d, cfg); }

  std::string name_;
  TreeConfig cfg_;
};

class EnsembleMethod final : public Method {
 public:
  EnsembleMethod(std::string name, TreeConfig cfg, std::vector<double> alphas)
      : name_(std::move(name)), cfg_(cfg), alphas_(std::move(alphas)) {}

  const std::string& name() const override { return name_; }

  FittedModel fit(const Dataset& train, std::uint64_t seed) const override {
    TreeConfig cfg = cfg_;
    cfg.seed = seed;
    return FittedModel(name_, train_eat(train, alphas_, cfg), train.feature_info(),
                       train.label_info());
  }

 private:
  std::string name_;
  TreeConfig cfg_;
  std::vector<double> alphas_;
};

}  // namespace

const std::vector<std::string>& benchmark_methods() {
  static const std::vector<std::string> names{
      "LinR", "LinR+CS", "LinR+US", "LinR+OS", "LogR", "LogR+CS", "LogR+US",
      "LogR+OS", "CDT", "DKMDT", "HDDT", "EAT", "ARDT"};
  return names;
}

const std::vector<std::string>& known_methods() {
  static const std::vector<std::string> names = [] {
    auto all = benchmark_methods();
    all.push_back("LinR+TH");
    all.push_back("LogR+TH");
    return all;
  }();
  return names;
}

std::unique_ptr<Method> build_method(const std::string& name, const MethodOptions& options) {
  const auto dash = name.find('+');
  const std::string base = name.substr(0, dash);
  const std::string suffix = dash == std::string::npos ? "" : name.substr(dash + 1);

  if (base == "LinR" || base == "LogR") {
    Rebalance rebalance;
    if (suffix.empty()) {
      rebalance = Rebalance::None;
    } else if (suffix == "CS") {
      rebalance = Rebalance::CostSensitive;
    } else if (suffix == "US") {
      rebalance = Rebalance::Undersample;
    } else if (suffix == "OS") {
      rebalance = Rebalance::Oversample;
    } else if (suffix == "TH") {
      rebalance = Rebalance::Threshold;
    } else {
      throw InvalidArgument("unknown method '" + name + "'");
    }
    return std::make_unique<LinearMethod>(name, base == "LogR" ? Link::Logistic : Link::Identity,
                                          rebalance, options.linear);
  }

  TreeConfig tree = options.tree;
  if (name == "CDT") {
    tree.criterion = Criterion::Shannon;
  } else if (name == "DKMDT") {
    tree.criterion = Criterion::Dkm;
  } else if (name == "HDDT") {
    tree.criterion = Criterion::Hellinger;
  } else if (name == "ARDT") {
    tree.criterion = Criterion::AdaptiveRenyi;
  } else if (name == "EAT") {
    return std::make_unique<EnsembleMethod>(name, tree, options.eat_alphas);
  } else {
    throw InvalidArgument("unknown method '" + name + "'");
  }
  return std::make_unique<TreeMethod>(name, tree);
}

}  // namespace ardt
