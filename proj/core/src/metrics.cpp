#include "ardt/metrics.hpp"

#include <cmath>

#include "ardt/error.hpp"

namespace ardt {

namespace {

double ratio(std::size_t num, std::size_t den) {
  return den == 0 ? 0.0 : static_cast<double>(num) / static_cast<double>(den);
}

}  // namespace

ConfusionMatrix confusion(std::span<const Label> actual, std::span<const Label> predicted) {
  if (actual.size() != predicted.size()) {
    throw InvalidArgument("confusion: actual and predicted lengths differ");
  }
  if (actual.empty()) throw InvalidArgument("confusion: empty label sequences");
  ConfusionMatrix cm;
  for (std::size_t i = 0; i < actual.size(); ++i) cm.add(actual[i], predicted[i]);
  return cm;
}

double precision(const ConfusionMatrix& cm) { return ratio(cm.tp, cm.tp + cm.fp); }
double sensitivity(const ConfusionMatrix& cm) { return ratio(cm.tp, cm.tp + cm.fn); }
double specificity(const ConfusionMatrix& cm) { return ratio(cm.tn, cm.tn + cm.fp); }

double fscore(const ConfusionMatrix& cm) { return ratio(2 * cm.tp, 2 * cm.tp + cm.fp + cm.fn); }

double accuracy(const ConfusionMatrix& cm) { return ratio(cm.tp + cm.tn, cm.total()); }

double bcr(const ConfusionMatrix& cm) { return 0.5 * (sensitivity(cm) + specificity(cm)); }

double bcr_geometric(const ConfusionMatrix& cm) {
  return std::sqrt(sensitivity(cm) * specificity(cm));
}

}  // namespace ardt
