#pragma once

#include <cstddef>
#include <span>
#include <string_view>
#include <utility>

namespace ardt {

// Class counts at a tree node.
struct ClassDistribution {
  double count0 = 0;
  double count1 = 0;

  double total() const { return count0 + count1; }
  double p1() const { return count1 / total(); }
  bool pure() const { return count0 == 0 || count1 == 0; }

  ClassDistribution operator+(const ClassDistribution& o) const {
    return {count0 + o.count0, count1 + o.count1};
  }
  ClassDistribution operator-(const ClassDistribution& o) const {
    return {count0 - o.count0, count1 - o.count1};
  }
  friend bool operator==(const ClassDistribution&, const ClassDistribution&) = default;
};

// Distribution with the given positive fraction and unit mass.
inline ClassDistribution from_p1(double p1) { return {1.0 - p1, p1}; }

struct RenyiAlpha {
  double alpha = 1.0;
};

// Binary Shannon entropy in bits; 0 log 0 = 0.
double shannon_entropy(const ClassDistribution& dist);

// Binary Rényi entropy in bits. alpha == 1 returns shannon_entropy exactly;
// alpha == 0 gives the Hartley entropy log2 |support|.
double renyi_entropy(const ClassDistribution& dist, RenyiAlpha a);

// 2 sqrt(p (1 - p)).
double dkm_impurity(const ClassDistribution& dist);

// Hellinger distance between the class-conditional branch distributions of a
// binary split. In [0, sqrt 2]. Throws InvalidArgument when the parent lacks a class.
double hellinger_split_value(const ClassDistribution& left, const ClassDistribution& right,
                             const ClassDistribution& parent);

enum class Criterion { Shannon, Dkm, Hellinger, AdaptiveRenyi, FixedRenyi };

std::string_view to_string(Criterion c);
Criterion criterion_from_string(std::string_view s);

// Impurity of one node under an entropy-style criterion. Hellinger is not an
// impurity and is rejected.
double impurity(Criterion c, const ClassDistribution& dist, double alpha = 1.0);

struct WeightedChild {
  ClassDistribution dist;
  double weight = 0;
};

// Size-weighted mean child impurity. Throws on an empty child list or zero weight.
double expected_child_entropy(std::span<const WeightedChild> children, Criterion c,
                              double alpha = 1.0);

// Largest alpha on the grid {1, 1-step, ..., step, 0} whose Rényi entropy of
// the prior is within `tol` of 1. Throws InvalidArgument for a pure prior.
RenyiAlpha find_alpha(const ClassDistribution& prior, double step = 0.01, double tol = 1e-3);

}  // namespace ardt
