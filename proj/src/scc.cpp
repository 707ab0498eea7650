#include "gcnlab/scc.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "gcnlab/error.hpp"
#include "gcnlab/gcn.hpp"
#include "gcnlab/parallel.hpp"
#include "gcnlab/rng.hpp"

namespace gcnlab {

namespace {

constexpr std::size_t kTupleChunk = 1024;

std::vector<Eigen::Index> draw_tuple(const CounterRng& rng, std::uint64_t t,
                                     std::uint64_t n, int size) {
  std::vector<Eigen::Index> idx;
  idx.reserve(static_cast<std::size_t>(size));
  std::uint64_t counter = 0;
  while (static_cast<int>(idx.size()) < size) {
    const auto j = static_cast<Eigen::Index>(rng.below(n, t, counter++));
    if (std::find(idx.begin(), idx.end(), j) == idx.end()) idx.push_back(j);
  }
  return idx;
}

}  // namespace

AffinityMatrix scc_affinities(const Matrix& points, int d,
                              std::optional<double> sigma,
                              std::size_t tuples_per_point,
                              std::uint64_t seed) {
  const auto n = points.cols();
  if (d < 0)
    throw Error(ErrorCode::invalid_argument, "scc_affinities: d must be >= 0");
  if (n < d + 2)
    throw Error(ErrorCode::invalid_argument,
                "scc_affinities: need at least d+2 points");
  if (sigma && !(*sigma > 0.0))
    throw Error(ErrorCode::invalid_argument,
                "scc_affinities: sigma must be positive");
  if (tuples_per_point == 0)
    throw Error(ErrorCode::invalid_argument,
                "scc_affinities: tuples_per_point must be positive");

  const std::uint64_t total = static_cast<std::uint64_t>(n) * tuples_per_point;
  const CounterRng rng(seed);
  const int size = d + 2;
  const std::size_t chunks =
      static_cast<std::size_t>((total + kTupleChunk - 1) / kTupleChunk);

  struct Scored {
    std::vector<Eigen::Index> idx;
    double c = 0.0;
  };
  const auto parts = map_chunks<std::vector<Scored>>(chunks, [&](std::size_t c) {
    std::vector<Scored> out;
    Matrix buffer(points.rows(), size);
    const std::uint64_t lo = c * kTupleChunk;
    const std::uint64_t hi = std::min<std::uint64_t>(total, lo + kTupleChunk);
    for (std::uint64_t t = lo; t < hi; ++t) {
      Scored s;
      s.idx = draw_tuple(rng, t, static_cast<std::uint64_t>(n), size);
      for (int v = 0; v < size; ++v)
        buffer.col(v) = points.col(s.idx[static_cast<std::size_t>(v)]);
      s.c = c_pol(Simplex(buffer));
      out.push_back(std::move(s));
    }
    return out;
  });

  AffinityMatrix result;
  result.sampled_tuples = total;
  if (sigma) {
    result.sigma = *sigma;
  } else {
    std::vector<double> values;
    values.reserve(static_cast<std::size_t>(total));
    for (const auto& part : parts)
      for (const auto& s : part) values.push_back(s.c);
    const auto mid = values.begin() + static_cast<std::ptrdiff_t>(values.size() / 2);
    std::nth_element(values.begin(), mid, values.end());
    result.sigma = *mid > 0.0 ? *mid : 1.0;
  }

  const double scale = 1.0 / (2.0 * result.sigma * result.sigma);
  result.weights = Matrix::Zero(n, n);
  for (const auto& part : parts) {
    for (const auto& s : part) {
      const double a = std::exp(-s.c * scale);
      for (std::size_t i = 0; i < s.idx.size(); ++i)
        for (std::size_t j = i + 1; j < s.idx.size(); ++j) {
          result.weights(s.idx[i], s.idx[j]) += a;
          result.weights(s.idx[j], s.idx[i]) += a;
        }
    }
  }
  return result;
}

ClusterAssignment spectral_cluster(const AffinityMatrix& w, int k,
                                   std::uint64_t seed) {
  const auto n = w.weights.rows();
  if (k < 1)
    throw Error(ErrorCode::invalid_argument, "spectral_cluster: k must be >= 1");
  if (w.weights.cols() != n)
    throw Error(ErrorCode::dimension_mismatch,
                "spectral_cluster: affinity matrix is not square");
  ClusterAssignment out;
  out.labels.assign(static_cast<std::size_t>(n), 0);
  if (k == 1 || n == 0) return out;
  if (k > n)
    throw Error(ErrorCode::invalid_argument,
                "spectral_cluster: more clusters than points");

  const Vector degree = w.weights.rowwise().sum();
  if (!(degree.maxCoeff() > 0.0)) {
    out.warning = "affinity matrix is identically zero; all labels set to 0";
    return out;
  }
  Vector inv_sqrt(n);
  for (Eigen::Index i = 0; i < n; ++i)
    inv_sqrt(i) = degree(i) > 0.0 ? 1.0 / std::sqrt(degree(i)) : 0.0;
  const Matrix normalized =
      inv_sqrt.asDiagonal() * w.weights * inv_sqrt.asDiagonal();
  const auto eig = jacobi_eigen(normalized);
  Matrix embed = eig.vectors.leftCols(k);
  for (Eigen::Index i = 0; i < n; ++i) {
    const double norm = embed.row(i).norm();
    if (norm > 0.0) embed.row(i) /= norm;
  }

  // k-means with deterministic farthest-point seeding.
  std::vector<Eigen::Index> seeds{static_cast<Eigen::Index>(seed % static_cast<std::uint64_t>(n))};
  Vector nearest = Vector::Constant(n, std::numeric_limits<double>::infinity());
  while (static_cast<int>(seeds.size()) < k) {
    const auto last = seeds.back();
    for (Eigen::Index i = 0; i < n; ++i)
      nearest(i) = std::min(nearest(i), (embed.row(i) - embed.row(last)).squaredNorm());
    Eigen::Index far = 0;
    nearest.maxCoeff(&far);
    seeds.push_back(far);
  }
  Matrix centers(k, embed.cols());
  for (int c = 0; c < k; ++c) centers.row(c) = embed.row(seeds[static_cast<std::size_t>(c)]);

  for (int iter = 0; iter < 200; ++iter) {
    bool changed = iter == 0;
    for (Eigen::Index i = 0; i < n; ++i) {
      int best = 0;
      double best_d = std::numeric_limits<double>::infinity();
      for (int c = 0; c < k; ++c) {
        const double dist = (embed.row(i) - centers.row(c)).squaredNorm();
        if (dist < best_d) {
          best_d = dist;
          best = c;
        }
      }
      if (out.labels[static_cast<std::size_t>(i)] != best) changed = true;
      out.labels[static_cast<std::size_t>(i)] = best;
    }
    if (!changed) break;
    Matrix sums = Matrix::Zero(k, embed.cols());
    std::vector<int> counts(static_cast<std::size_t>(k), 0);
    for (Eigen::Index i = 0; i < n; ++i) {
      const int l = out.labels[static_cast<std::size_t>(i)];
      sums.row(l) += embed.row(i);
      ++counts[static_cast<std::size_t>(l)];
    }
    for (int c = 0; c < k; ++c)
      if (counts[static_cast<std::size_t>(c)] > 0)
        centers.row(c) = sums.row(c) / counts[static_cast<std::size_t>(c)];
  }
  std::vector<int> used(static_cast<std::size_t>(k), 0);
  for (const int l : out.labels) used[static_cast<std::size_t>(l)] = 1;
  if (std::find(used.begin(), used.end(), 0) != used.end())
    out.warning = "at least one cluster is empty";
  return out;
}

double clustering_accuracy(const std::vector<int>& labels,
                           const std::vector<int>& truth, int k) {
  if (labels.size() != truth.size())
    throw Error(ErrorCode::dimension_mismatch,
                "clustering_accuracy: label vectors differ in length");
  if (k < 1 || k > 8)
    throw Error(ErrorCode::invalid_argument,
                "clustering_accuracy: k must lie in [1, 8]");
  if (labels.empty()) return 1.0;
  std::vector<int> perm(static_cast<std::size_t>(k));
  std::iota(perm.begin(), perm.end(), 0);
  std::size_t best = 0;
  do {
    std::size_t hits = 0;
    for (std::size_t i = 0; i < labels.size(); ++i)
      if (labels[i] >= 0 && labels[i] < k &&
          perm[static_cast<std::size_t>(labels[i])] == truth[i])
        ++hits;
    best = std::max(best, hits);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return static_cast<double>(best) / static_cast<double>(labels.size());
}

}  // namespace gcnlab
