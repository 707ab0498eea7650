#pragma once

// Spectral-curvature style clustering: polar-GCN affinities on sampled
// (d+2)-tuples, flattened additively into a pairwise matrix, followed by a
// normalized spectral embedding and k-means.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "gcnlab/linalg.hpp"

namespace gcnlab {

struct AffinityMatrix {
  Matrix weights;  ///< N x N, symmetric, nonnegative
  double sigma = 0.0;
  std::uint64_t sampled_tuples = 0;
};

/// Samples N * tuples_per_point tuples of d+2 distinct points, scores each by
/// exp(-c_pol / (2 sigma^2)) and adds that score to every pair inside the
/// tuple. Without `sigma`, the median sampled c_pol is used.
AffinityMatrix scc_affinities(const Matrix& points, int d,
                              std::optional<double> sigma,
                              std::size_t tuples_per_point, std::uint64_t seed);

struct ClusterAssignment {
  std::vector<int> labels;
  std::string warning;
};

ClusterAssignment spectral_cluster(const AffinityMatrix& w, int k,
                                   std::uint64_t seed = 0);

/// Fraction of points labeled correctly under the best relabeling (k <= 8).
double clustering_accuracy(const std::vector<int>& labels,
                           const std::vector<int>& truth, int k);

}  // namespace gcnlab
