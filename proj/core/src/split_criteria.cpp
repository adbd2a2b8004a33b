#include "ardt/split_criteria.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "ardt/error.hpp"

namespace ardt {

namespace {

void require_mass(const ClassDistribution& d, const char* who) {
  if (!(d.total() > 0) || d.count0 < 0 || d.count1 < 0) {
    throw InvalidArgument(std::string(who) + ": distribution needs positive total count");
  }
}

double plogp(double p) { return p > 0 ? p * std::log2(p) : 0.0; }

}  // namespace

double shannon_entropy(const ClassDistribution& dist) {
  require_mass(dist, "shannon_entropy");
  const double p = dist.p1();
  const double q = dist.count0 / dist.total();
  return -(plogp(p) + plogp(q));
}

double renyi_entropy(const ClassDistribution& dist, RenyiAlpha a) {
  require_mass(dist, "renyi_entropy");
  if (!(a.alpha >= 0)) throw InvalidArgument("renyi_entropy: alpha must be >= 0");
  if (a.alpha == 1.0) return shannon_entropy(dist);
  const double p = dist.p1();
  const double q = dist.count0 / dist.total();
  // log sum p^a = log1p(sum p (p^(a-1) - 1)) keeps precision as a -> 1.
  const double am1 = a.alpha - 1.0;
  double s = 0;
  for (double x : {p, q}) {
    if (x > 0) s += x * std::expm1(am1 * std::log(x));
  }
  if (a.alpha == 0.0) {
    // p^0 = 1 on the support only.
    s = (p > 0) + (q > 0) - 1.0;
  }
  const double h = std::log1p(s) / std::numbers::ln2 / (1.0 - a.alpha);
  // Binary entropies live in [0, 1]; clamp away rounding at the ends.
  return std::clamp(h, 0.0, 1.0);
}

double dkm_impurity(const ClassDistribution& dist) {
  require_mass(dist, "dkm_impurity");
  return 2.0 * std::sqrt(dist.count0 * dist.count1) / dist.total();
}

double hellinger_split_value(const ClassDistribution& left, const ClassDistribution& right,
                             const ClassDistribution& parent) {
  if (parent.count0 <= 0 || parent.count1 <= 0) {
    throw InvalidArgument("hellinger_split_value: parent must contain both classes");
  }
  const double lp = std::sqrt(left.count1 / parent.count1);
  const double ln = std::sqrt(left.count0 / parent.count0);
  const double rp = std::sqrt(right.count1 / parent.count1);
  const double rn = std::sqrt(right.count0 / parent.count0);
  return std::sqrt((lp - ln) * (lp - ln) + (rp - rn) * (rp - rn));
}

std::string_view to_string(Criterion c) {
  switch (c) {
    case Criterion::Shannon: return "shannon";
    case Criterion::Dkm: return "dkm";
    case Criterion::Hellinger: return "hellinger";
    case Criterion::AdaptiveRenyi: return "adaptive-renyi";
    case Criterion::FixedRenyi: return "fixed-renyi";
  }
  return "unknown";
}

Criterion criterion_from_string(std::string_view s) {
  for (Criterion c : {Criterion::Shannon, Criterion::Dkm, Criterion::Hellinger,
                      Criterion::AdaptiveRenyi, Criterion::FixedRenyi}) {
    if (to_string(c) == s) return c;
  }
  throw InvalidArgument("unknown splitting criterion '" + std::string(s) + "'");
}

double impurity(Criterion c, const ClassDistribution& dist, double alpha) {
  switch (c) {
    case Criterion::Shannon: return shannon_entropy(dist);
    case Criterion::Dkm: return dkm_impurity(dist);
    case Criterion::AdaptiveRenyi:
    case Criterion::FixedRenyi: return renyi_entropy(dist, {alpha});
    case Criterion::Hellinger: break;
  }
  throw InvalidArgument("impurity: hellinger is a split value, not a node impurity");
}

double expected_child_entropy(std::span<const WeightedChild> children, Criterion c,
                              double alpha) {
  if (children.empty()) throw InvalidArgument("expected_child_entropy: empty child list");
  double total = 0;
  for (const auto& ch : children) total += ch.weight;
  if (!(total > 0)) throw InvalidArgument("expected_child_entropy: weights must sum to > 0");
  double acc = 0;
  for (const auto& ch : children) {
    if (ch.weight > 0) acc += ch.weight / total * impurity(c, ch.dist, alpha);
  }
  return acc;
}

RenyiAlpha find_alpha(const ClassDistribution& prior, double step, double tol) {
  require_mass(prior, "find_alpha");
  if (prior.pure()) throw InvalidArgument("find_alpha: prior must contain both classes");
  if (!(step > 0 && step < 1)) throw InvalidArgument("find_alpha: step must lie in (0,1)");
  if (!(tol > 0)) throw InvalidArgument("find_alpha: tol must be > 0");
  // Grid points are 1 - k*step computed from the integer k so rounding does
  // not accumulate; the last point is exactly 0.
  for (long k = 0;; ++k) {
    double alpha = 1.0 - static_cast<double>(k) * step;
    if (alpha <= 0) alpha = 0;
    if (std::abs(renyi_entropy(prior, {alpha}) - 1.0) <= tol) return {alpha};
    if (alpha == 0) break;
  }
  // Unreachable for a two-class prior: alpha = 0 yields exactly 1.
  return {0.0};
}

}  // namespace ardt
