#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <span>
#include <string_view>

namespace ardt {

using Engine = std::mt19937_64;

// 64-bit FNV-1a. Stable across platforms, used for seed derivation and config hashes.
std::uint64_t fnv1a64(std::string_view bytes, std::uint64_t seed = 0xcbf29ce484222325ULL);

// Derives an independent seed for a named substream of `root`. Adding new
// substream names never changes the draws of existing ones.
std::uint64_t derive_seed(std::uint64_t root, std::string_view name);

inline Engine make_engine(std::uint64_t root, std::string_view name) {
  return Engine(derive_seed(root, name));
}

// Uniform integer in [0, n). Rejection sampling on raw engine output so the
// stream is identical on every standard library.
std::size_t uniform_index(Engine& engine, std::size_t n);

// Uniform double in [0, 1) with 53 random bits.
double uniform01(Engine& engine);

// Standard normal draw (Box-Muller on uniform01).
double standard_normal(Engine& engine);

template <typename T>
void shuffle(std::span<T> values, Engine& engine) {
  for (std::size_t i = values.size(); i > 1; --i) {
    std::size_t j = uniform_index(engine, i);
    std::swap(values[i - 1], values[j]);
  }
}

}  // namespace ardt
