#include "gcnlab/volume_sampling.hpp"

#include <cmath>
#include <string>

#include "gcnlab/error.hpp"
#include "gcnlab/parallel.hpp"
#include "gcnlab/rng.hpp"
#include "gcnlab/simplex.hpp"

namespace gcnlab {

namespace {

constexpr std::uint64_t kChunk = 4096;

std::uint64_t tuple_count(const DiscreteMeasure& mu, int d, std::uint64_t cap) {
  if (d < 0)
    throw Error(ErrorCode::invalid_argument, "volume sampling: d must be >= 0");
  const auto n = static_cast<std::uint64_t>(mu.size());
  std::uint64_t total = 1;
  for (int i = 0; i < d; ++i) {
    if (total > cap / n)
      throw Error(ErrorCode::cap_exceeded,
                  "volume sampling: enumeration exceeds the cap of " +
                      std::to_string(cap));
    total *= n;
  }
  if (total > cap)
    throw Error(ErrorCode::cap_exceeded,
                "volume sampling: enumeration exceeds the cap of " +
                    std::to_string(cap));
  return total;
}

void decode(std::uint64_t t, std::uint64_t n, std::vector<Eigen::Index>& idx) {
  for (auto& i : idx) {
    i = static_cast<Eigen::Index>(t % n);
    t /= n;
  }
}

/// prod w * M_d^2 for the tuple, with `buffer` holding x_cm then the atoms.
double tuple_weight(const DiscreteMeasure& mu, const std::vector<Eigen::Index>& idx,
                    Matrix& buffer) {
  double w = 1.0;
  for (std::size_t s = 0; s < idx.size(); ++s) {
    w *= mu.weight(idx[s]);
    buffer.col(static_cast<Eigen::Index>(s) + 1) = mu.atom(idx[s]);
  }
  const double v = volume(Simplex(buffer));
  return w * v * v;
}

AffineFlat flat_of(const Matrix& buffer) {
  const Vector base = buffer.col(0);
  Matrix dirs = buffer.rightCols(buffer.cols() - 1);
  dirs.colwise() -= base;
  return AffineFlat::spanned(base, dirs);
}

}  // namespace

SampledFlat volume_sample_flat(const DiscreteMeasure& mu, int d,
                               std::uint64_t seed, std::uint64_t cap) {
  const auto total = tuple_count(mu, d, cap);
  const auto n = static_cast<std::uint64_t>(mu.size());
  Matrix buffer(mu.ambient_dim(), d + 1);
  buffer.col(0) = center_of_mass(mu);
  std::vector<Eigen::Index> idx(static_cast<std::size_t>(d));

  const std::size_t chunks = static_cast<std::size_t>((total + kChunk - 1) / kChunk);
  const auto sums = map_chunks<double>(chunks, [&](std::size_t c) {
    Matrix local(buffer);
    std::vector<Eigen::Index> tuple(idx.size());
    KahanSum acc;
    const std::uint64_t hi = std::min(total, (c + 1) * kChunk);
    for (std::uint64_t t = c * kChunk; t < hi; ++t) {
      decode(t, n, tuple);
      acc.add(tuple_weight(mu, tuple, local));
    }
    return acc.value();
  });
  const double norm = pairwise_sum(sums);
  if (!(norm > 0.0))
    throw Error(ErrorCode::degenerate_measure,
                "volume_sample_flat: every d-tuple has zero volume");

  // Inverse CDF: locate the chunk first, then walk inside it.
  const double target = CounterRng(seed).uniform(0, 0) * norm;
  double acc = 0.0;
  std::size_t chunk = 0;
  while (chunk + 1 < chunks && acc + sums[chunk] <= target) acc += sums[chunk++];
  const std::uint64_t hi = std::min(total, (chunk + 1) * kChunk);
  std::uint64_t last_positive = total;
  for (std::uint64_t t = chunk * kChunk; t < hi; ++t) {
    decode(t, n, idx);
    const double w = tuple_weight(mu, idx, buffer);
    if (w <= 0.0) continue;
    last_positive = t;
    acc += w;
    if (acc > target) break;
  }
  decode(last_positive, n, idx);
  const double w = tuple_weight(mu, idx, buffer);
  return SampledFlat{flat_of(buffer), idx, w / norm};
}

double volume_sampling_expected_error(const DiscreteMeasure& mu, int d,
                                      std::uint64_t cap) {
  const auto total = tuple_count(mu, d, cap);
  const auto n = static_cast<std::uint64_t>(mu.size());
  const Vector x_cm = center_of_mass(mu);
  const std::size_t chunks = static_cast<std::size_t>((total + kChunk - 1) / kChunk);
  struct Part {
    double weight = 0.0;
    double weighted_error = 0.0;
  };
  const auto parts = map_chunks<Part>(chunks, [&](std::size_t c) {
    Matrix buffer(mu.ambient_dim(), d + 1);
    buffer.col(0) = x_cm;
    std::vector<Eigen::Index> idx(static_cast<std::size_t>(d));
    KahanSum w_acc, e_acc;
    const std::uint64_t hi = std::min(total, (c + 1) * kChunk);
    for (std::uint64_t t = c * kChunk; t < hi; ++t) {
      decode(t, n, idx);
      const double w = tuple_weight(mu, idx, buffer);
      if (w <= 0.0) continue;
      w_acc.add(w);
      e_acc.add(w * mean_squared_distance(mu, flat_of(buffer)));
    }
    return Part{w_acc.value(), e_acc.value()};
  });
  std::vector<double> ws, es;
  for (const auto& p : parts) {
    ws.push_back(p.weight);
    es.push_back(p.weighted_error);
  }
  const double norm = pairwise_sum(ws);
  if (!(norm > 0.0))
    throw Error(ErrorCode::degenerate_measure,
                "volume_sampling_expected_error: every d-tuple has zero volume");
  return pairwise_sum(es) / norm;
}

}  // namespace gcnlab
