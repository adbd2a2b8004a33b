#pragma once

#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "ardt/dataset.hpp"
#include "ardt/linear.hpp"
#include "ardt/tree.hpp"

namespace ardt {

// A trained classifier of any supported family.
class FittedModel {
 public:
  using Variant = std::variant<DecisionTree, EnsembleModel, LinearModel>;

  FittedModel(std::string method, Variant model, std::vector<FeatureInfo> features,
              LabelInfo label)
      : method_(std::move(method)),
        model_(std::move(model)),
        features_(std::move(features)),
        label_(std::move(label)) {}

  Label predict(std::span<const double> x) const;

  const std::string& method() const { return method_; }
  const Variant& model() const { return model_; }
  const std::vector<FeatureInfo>& features() const { return features_; }
  const LabelInfo& label() const { return label_; }

  friend bool operator==(const FittedModel&, const FittedModel&) = default;

 private:
  std::string method_;
  Variant model_;
  std::vector<FeatureInfo> features_;
  LabelInfo label_;
};

// A train/predict pipeline: resampling, weighting, learner and threshold.
class Method {
 public:
  virtual ~Method() = default;
  virtual const std::string& name() const = 0;
  // `seed` is the root of every random draw this fit makes.
  virtual FittedModel fit(const Dataset& train, std::uint64_t seed) const = 0;
};

struct MethodOptions {
  TreeConfig tree;
  LinearTrainConfig linear;
  std::vector<double> eat_alphas = default_eat_alphas();
};

// The thirteen compared methods plus the thresholded linear variants.
const std::vector<std::string>& known_methods();
const std::vector<std::string>& benchmark_methods();

// Throws InvalidArgument for unknown names.
std::unique_ptr<Method> build_method(const std::string& name, const MethodOptions& options = {});

}  // namespace ardt
