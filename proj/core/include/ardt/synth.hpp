#pragma once

#include <cstddef>
#include <cstdint>
#include <string_view>

#include "ardt/dataset.hpp"

namespace ardt {

enum class Boundary {
  LinearGaussian,  // two spherical unit Gaussians, means `separation` apart
  Xor,             // positives in quadrants (+,+) and (-,-) of the first two features
  Annulus,         // positives on a ring around a disc of negatives
};

struct SynthSpec {
  std::size_t n = 1000;
  std::size_t m = 2;
  double mu = 0.1;
  Boundary boundary = Boundary::LinearGaussian;
  double separation = 2.0;  // linear-gaussian only
  double noise = 0.0;       // label-flip rate in [0, 0.5)
  std::uint64_t seed = 0;

  void validate() const;
};

// Exactly round(mu * n) positives, rows in random order. Label noise is
// applied as swapped positive/negative pairs so the class counts stay exact.
Dataset generate(const SynthSpec& spec);

// Concatenated per-day blocks, each with its own imbalance drawn uniformly
// from [mu_low, mu_high]. spec.mu is ignored.
struct DailySpec {
  SynthSpec base;
  std::size_t days = 30;
  double mu_low = 0.06;
  double mu_high = 0.16;
};

Dataset generate_daily(const DailySpec& spec);

std::string_view to_string(Boundary b);
Boundary boundary_from_string(std::string_view name);

}  // namespace ardt
