#pragma once

// Volume sampling of d-flats through the center of mass: a d-tuple of atoms
// is drawn with probability proportional to prod w * M_d(x_cm, x_1..x_d)^2.

#include <cstdint>
#include <vector>

#include "gcnlab/integrals.hpp"
#include "gcnlab/linalg.hpp"
#include "gcnlab/measure.hpp"

namespace gcnlab {

struct SampledFlat {
  AffineFlat flat;
  std::vector<Eigen::Index> atoms;
  double probability = 0.0;
};

SampledFlat volume_sample_flat(const DiscreteMeasure& mu, int d,
                               std::uint64_t seed,
                               std::uint64_t cap = kDefaultEnumerationCap);

/// Expected mean squared distance to the sampled flat, by enumeration.
double volume_sampling_expected_error(const DiscreteMeasure& mu, int d,
                                      std::uint64_t cap = kDefaultEnumerationCap);

}  // namespace gcnlab
