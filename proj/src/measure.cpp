#include "gcnlab/measure.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>

#include "gcnlab/error.hpp"

namespace gcnlab {

DiscreteMeasure::DiscreteMeasure(Matrix atoms, Vector weights)
    : atoms_(std::move(atoms)), weights_(std::move(weights)) {
  if (atoms_.cols() == 0 || atoms_.rows() == 0)
    throw Error(ErrorCode::invalid_argument, "DiscreteMeasure: no atoms");
  if (atoms_.cols() != weights_.size())
    throw Error(ErrorCode::dimension_mismatch,
                "DiscreteMeasure: atoms and weights differ in length");
  if (!atoms_.allFinite())
    throw Error(ErrorCode::invalid_argument,
                "DiscreteMeasure: non-finite coordinate");
  for (Eigen::Index j = 0; j < weights_.size(); ++j)
    if (!(weights_(j) > 0.0) || !std::isfinite(weights_(j)))
      throw Error(ErrorCode::invalid_argument,
                  "DiscreteMeasure: weights must be positive");
  if (std::abs(weights_.sum() - 1.0) > 1e-10)
    throw Error(ErrorCode::invalid_argument,
                "DiscreteMeasure: weights do not sum to 1");
}

DiscreteMeasure DiscreteMeasure::uniform(Matrix atoms) {
  const auto n = atoms.cols();
  if (n == 0)
    throw Error(ErrorCode::invalid_argument, "DiscreteMeasure: no atoms");
  Vector w = Vector::Constant(n, 1.0 / static_cast<double>(n));
  return DiscreteMeasure(std::move(atoms), std::move(w));
}

DiscreteMeasure DiscreteMeasure::empirical(const Matrix& samples) {
  const auto n = samples.cols();
  if (n == 0)
    throw Error(ErrorCode::invalid_argument, "empirical: no samples");
  auto key = [&](Eigen::Index j) {
    return std::vector<double>(samples.col(j).data(),
                               samples.col(j).data() + samples.rows());
  };
  std::map<std::vector<double>, Eigen::Index> counts;
  std::vector<Eigen::Index> first;
  for (Eigen::Index j = 0; j < n; ++j) {
    auto [it, inserted] = counts.emplace(key(j), 0);
    if (inserted) first.push_back(j);
    ++it->second;
  }
  Matrix atoms(samples.rows(), static_cast<Eigen::Index>(first.size()));
  Vector w(static_cast<Eigen::Index>(first.size()));
  for (std::size_t k = 0; k < first.size(); ++k) {
    const auto j = first[k];
    atoms.col(static_cast<Eigen::Index>(k)) = samples.col(j);
    w(static_cast<Eigen::Index>(k)) =
        static_cast<double>(counts[key(j)]) / static_cast<double>(n);
  }
  return DiscreteMeasure(std::move(atoms), std::move(w));
}

Vector center_of_mass(const DiscreteMeasure& mu) {
  return mu.atoms() * mu.weights();
}

double diameter(const DiscreteMeasure& mu) {
  double best = 0.0;
  const Matrix& a = mu.atoms();
  for (Eigen::Index i = 0; i < a.cols(); ++i)
    for (Eigen::Index j = i + 1; j < a.cols(); ++j)
      best = std::max(best, (a.col(i) - a.col(j)).norm());
  return best;
}

SpectralSummary spectral_summary(const DiscreteMeasure& mu) {
  SpectralSummary s;
  s.x_cm = center_of_mass(mu);
  s.spectrum = weighted_spectrum(mu.atoms(), mu.weights(), s.x_cm);
  s.total_variance = s.spectrum.values.squaredNorm();
  return s;
}

LsFit ls_flat(const DiscreteMeasure& mu, int d,
              const std::optional<Vector>& anchor) {
  const auto dim = mu.ambient_dim();
  if (d < 0 || d > dim)
    throw Error(ErrorCode::invalid_argument,
                "ls_flat: d must lie in [0, D]");
  if (anchor && anchor->size() != dim)
    throw Error(ErrorCode::dimension_mismatch,
                "ls_flat: anchor has wrong dimension");
  const Vector center = anchor ? *anchor : center_of_mass(mu);
  const Spectrum spec = weighted_spectrum(mu.atoms(), mu.weights(), center);
  double tail = 0.0;
  for (Eigen::Index i = d; i < spec.values.size(); ++i)
    tail += spec.values(i) * spec.values(i);
  bool unique = true;
  if (d > 0 && d < dim) {
    const double gap = spec.values(d - 1) - spec.values(d);
    unique = gap > 1e-10 * spec.values(0);
  }
  AffineFlat flat(center, spec.vectors.leftCols(d));
  return LsFit{std::move(flat), std::sqrt(tail), unique};
}

double empirical_ls_error(const Matrix& samples, int d) {
  const auto fit = ls_flat(DiscreteMeasure::uniform(samples), d);
  return fit.e2 * fit.e2;
}

double mean_squared_distance(const DiscreteMeasure& mu,
                             const AffineFlat& flat) {
  double s = 0.0;
  for (Eigen::Index j = 0; j < mu.size(); ++j) {
    const double r = dist_to_flat(mu.atom(j), flat);
    s += mu.weight(j) * r * r;
  }
  return s;
}

RegularityProbe regularity_probe(const DiscreteMeasure& mu, double gamma,
                                 std::optional<std::vector<double>> radii) {
  if (!(gamma > 0.0))
    throw Error(ErrorCode::invalid_argument,
                "regularity_probe: gamma must be positive");
  const double dm = diameter(mu);
  if (!radii) {
    radii.emplace();
    for (int k = 1; k <= 8; ++k) radii->push_back(dm * std::ldexp(1.0, -k));
  }
  if (radii->empty())
    throw Error(ErrorCode::invalid_argument, "regularity_probe: no radii");
  for (const double t : *radii)
    if (!(t > 0.0))
      throw Error(ErrorCode::invalid_argument,
                  "regularity_probe: radii must be positive");

  RegularityProbe probe;
  probe.radii = *radii;
  for (const double t : probe.radii) {
    double worst = 0.0;
    for (Eigen::Index i = 0; i < mu.size(); ++i) {
      double mass = 0.0;
      for (Eigen::Index j = 0; j < mu.size(); ++j)
        if ((mu.atom(j) - mu.atom(i)).norm() <= t) mass += mu.weight(j);
      worst = std::max(worst, mass / std::pow(t, gamma));
    }
    probe.per_radius.push_back(worst);
    probe.c_est = std::max(probe.c_est, worst);
  }

  std::vector<std::size_t> order(probe.radii.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return probe.radii[a] < probe.radii[b];
  });
  probe.satisfied_upper = std::isfinite(probe.c_est);
  if (order.size() >= 2) {
    const double finest = probe.per_radius[order[0]];
    const double next = probe.per_radius[order[1]];
    probe.satisfied_upper = probe.satisfied_upper && finest <= 1.5 * next;
  }
  return probe;
}

}  // namespace gcnlab
