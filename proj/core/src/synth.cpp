#include "ardt/synth.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include "ardt/error.hpp"
#include "ardt/rng.hpp"

namespace ardt {

namespace {

std::size_t positive_count(const SynthSpec& spec) {
  return static_cast<std::size_t>(std::llround(spec.mu * static_cast<double>(spec.n)));
}

// Uniform in [-1, 1].
double symmetric(Engine& eng) { return 2.0 * uniform01(eng) - 1.0; }

void draw_row(const SynthSpec& spec, Label label, Engine& eng, double* out) {
  switch (spec.boundary) {
    case Boundary::LinearGaussian: {
      const double shift = label ? spec.separation / std::sqrt(static_cast<double>(spec.m)) : 0.0;
      for (std::size_t j = 0; j < spec.m; ++j) out[j] = standard_normal(eng) + shift;
      return;
    }
    case Boundary::Xor: {
      const double a = uniform01(eng);
      const double b = uniform01(eng);
      const bool flip = uniform_index(eng, 2) == 1;
      const double sa = flip ? -1.0 : 1.0;
      const double sb = label ? sa : -sa;
      out[0] = sa * a;
      out[1] = sb * b;
      for (std::size_t j = 2; j < spec.m; ++j) out[j] = symmetric(eng);
      return;
    }
    case Boundary::Annulus: {
      const double lo = label ? 1.2 : 0.0;
      const double hi = label ? 2.0 : 1.0;
      const double r = std::sqrt(uniform01(eng) * (hi * hi - lo * lo) + lo * lo);
      const double theta = 2.0 * std::numbers::pi * uniform01(eng);
      out[0] = r * std::cos(theta);
      out[1] = r * std::sin(theta);
      for (std::size_t j = 2; j < spec.m; ++j) out[j] = symmetric(eng);
      return;
    }
  }
}

}  // namespace

void SynthSpec::validate() const {
  if (n < 2) throw InvalidArgument("synth: n must be >= 2");
  if (m < 1) throw InvalidArgument("synth: m must be >= 1");
  if (boundary != Boundary::LinearGaussian && m < 2) {
    throw InvalidArgument("synth: xor and annulus need m >= 2");
  }
  if (!(mu > 0 && mu < 1)) throw InvalidArgument("synth: mu must lie in (0,1)");
  if (!(noise >= 0 && noise < 0.5)) throw InvalidArgument("synth: noise must lie in [0,0.5)");
  if (!std::isfinite(separation)) throw InvalidArgument("synth: separation must be finite");
  const std::size_t pos = positive_count(*this);
  if (pos == 0 || pos == n) {
    throw InvalidArgument("synth: round(mu * n) leaves a class empty");
  }
}

Dataset generate(const SynthSpec& spec) {
  spec.validate();
  const std::size_t pos = positive_count(spec);

  std::vector<Label> labels(spec.n, 0);
  std::fill(labels.begin(), labels.begin() + static_cast<std::ptrdiff_t>(pos), 1);
  Engine order = make_engine(spec.seed, "order");
  shuffle(std::span<Label>(labels), order);

  std::vector<double> x(spec.n * spec.m);
  Engine eng = make_engine(spec.seed, "features");
  for (std::size_t i = 0; i < spec.n; ++i) draw_row(spec, labels[i], eng, x.data() + i * spec.m);

  if (spec.noise > 0) {
    std::vector<std::size_t> p_idx, n_idx;
    for (std::size_t i = 0; i < spec.n; ++i) (labels[i] ? p_idx : n_idx).push_back(i);
    Engine ne = make_engine(spec.seed, "noise");
    shuffle(std::span<std::size_t>(p_idx), ne);
    shuffle(std::span<std::size_t>(n_idx), ne);
    const auto pairs = std::min<std::size_t>(
        static_cast<std::size_t>(std::llround(spec.noise * static_cast<double>(spec.n) / 2.0)),
        std::min(p_idx.size(), n_idx.size()));
    for (std::size_t s = 0; s < pairs; ++s) {
      labels[p_idx[s]] = 0;
      labels[n_idx[s]] = 1;
    }
  }

  std::vector<FeatureInfo> info(spec.m);
  for (std::size_t j = 0; j < spec.m; ++j) info[j].name = "x" + std::to_string(j);
  const std::string name = std::string("synth-") + std::string(to_string(spec.boundary));
  return Dataset(name, std::move(x), std::move(labels), std::move(info),
                 LabelInfo{"label", "1", "0"});
}

Dataset generate_daily(const DailySpec& spec) {
  if (spec.days == 0) throw InvalidArgument("synth: days must be >= 1");
  if (!(spec.mu_low > 0 && spec.mu_low <= spec.mu_high && spec.mu_high < 1)) {
    throw InvalidArgument("synth: need 0 < mu_low <= mu_high < 1");
  }
  Engine mu_eng = make_engine(spec.base.seed, "daily-mu");
  std::vector<double> x;
  std::vector<Label> labels;
  std::vector<FeatureInfo> info;
  for (std::size_t day = 0; day < spec.days; ++day) {
    SynthSpec s = spec.base;
    s.mu = spec.mu_low + (spec.mu_high - spec.mu_low) * uniform01(mu_eng);
    s.seed = derive_seed(spec.base.seed, "day-" + std::to_string(day));
    const Dataset block = generate(s);
    x.insert(x.end(), block.features().begin(), block.features().end());
    labels.insert(labels.end(), block.labels().begin(), block.labels().end());
    if (info.empty()) info = block.feature_info();
  }
  return Dataset("synth-daily", std::move(x), std::move(labels), std::move(info),
                 LabelInfo{"label", "1", "0"});
}

std::string_view to_string(Boundary b) {
  switch (b) {
    case Boundary::LinearGaussian: return "linear-gaussian";
    case Boundary::Xor: return "xor";
    case Boundary::Annulus: return "annulus";
  }
  return "?";
}

Boundary boundary_from_string(std::string_view name) {
  if (name == "linear-gaussian") return Boundary::LinearGaussian;
  if (name == "xor") return Boundary::Xor;
  if (name == "annulus") return Boundary::Annulus;
  throw InvalidArgument("unknown boundary '" + std::string(name) +
                        "' (expected linear-gaussian, xor or annulus)");
}

}  // namespace ardt
