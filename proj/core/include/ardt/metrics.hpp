#pragma once

#include <cstddef>
#include <span>

#include "ardt/dataset.hpp"

namespace ardt {

struct ConfusionMatrix {
  std::size_t tp = 0;
  std::size_t fp = 0;
  std::size_t tn = 0;
  std::size_t fn = 0;

  std::size_t total() const { return tp + fp + tn + fn; }
  std::size_t positives() const { return tp + fn; }
  std::size_t negatives() const { return tn + fp; }

  void add(Label actual, Label predicted) {
    if (actual) {
      ++(predicted ? tp : fn);
    } else {
      ++(predicted ? fp : tn);
    }
  }
  ConfusionMatrix& operator+=(const ConfusionMatrix& o) {
    tp += o.tp;
    fp += o.fp;
    tn += o.tn;
    fn += o.fn;
    return *this;
  }
  friend bool operator==(const ConfusionMatrix&, const ConfusionMatrix&) = default;
};

// Label 1 is the positive class. Throws InvalidArgument on a length mismatch
// or empty input.
ConfusionMatrix confusion(std::span<const Label> actual, std::span<const Label> predicted);

// Every ratio below is 0 when its denominator is 0.
double precision(const ConfusionMatrix& cm);
double sensitivity(const ConfusionMatrix& cm);
double specificity(const ConfusionMatrix& cm);
double fscore(const ConfusionMatrix& cm);    // 2TP / (2TP + FP + FN)
double accuracy(const ConfusionMatrix& cm);  // (TP + TN) / total
double bcr(const ConfusionMatrix& cm);       // (sensitivity + specificity) / 2
double bcr_geometric(const ConfusionMatrix& cm);

}  // namespace ardt
