#pragma once

#include <algorithm>
#include <cstdint>
#include <vector>

#include "gcnlab/linalg.hpp"

namespace gcnlab {

/// SplitMix64 finalizer.
constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

/// Stateless counter-based generator: every draw is a pure function of
/// (seed, stream, counter), so results do not depend on evaluation order or
/// on how work is split across threads.
class CounterRng {
 public:
  explicit constexpr CounterRng(std::uint64_t seed) noexcept : seed_(seed) {}

  constexpr std::uint64_t bits(std::uint64_t stream,
                               std::uint64_t counter) const noexcept {
    return mix64(mix64(seed_ ^ mix64(stream)) + 0xd1b54a32d192ed03ULL * counter);
  }

  /// Uniform double in [0, 1).
  double uniform(std::uint64_t stream, std::uint64_t counter) const noexcept {
    return static_cast<double>(bits(stream, counter) >> 11) * 0x1.0p-53;
  }

  /// Uniform integer in [0, n).
  std::uint64_t below(std::uint64_t n, std::uint64_t stream,
                      std::uint64_t counter) const noexcept {
    return static_cast<std::uint64_t>(uniform(stream, counter) *
                                      static_cast<double>(n));
  }

  /// Derived generator for an independent sub-experiment.
  CounterRng split(std::uint64_t key) const noexcept {
    return CounterRng(mix64(seed_ ^ mix64(key ^ 0x5851f42d4c957f2dULL)));
  }

  std::uint64_t seed() const noexcept { return seed_; }

 private:
  std::uint64_t seed_;
};

/// Inverse-CDF sampling of atom indices from a weight vector.
class WeightedIndexSampler {
 public:
  explicit WeightedIndexSampler(const Vector& weights) {
    cumulative_.reserve(static_cast<std::size_t>(weights.size()));
    double acc = 0.0;
    for (Eigen::Index j = 0; j < weights.size(); ++j) {
      acc += weights(j);
      cumulative_.push_back(acc);
    }
  }

  Eigen::Index operator()(double u) const {
    const double target = u * cumulative_.back();
    auto it = std::upper_bound(cumulative_.begin(), cumulative_.end(), target);
    if (it == cumulative_.end()) --it;
    return static_cast<Eigen::Index>(it - cumulative_.begin());
  }

 private:
  std::vector<double> cumulative_;
};

}  // namespace gcnlab
