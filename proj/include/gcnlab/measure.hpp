#pragma once

#include <optional>
#include <vector>

#include "gcnlab/linalg.hpp"

namespace gcnlab {

/// Finitely supported probability measure. Atoms are the columns of a
/// D x N matrix; weights are positive and sum to 1 within 1e-10. Atoms need
/// not be distinct.
class DiscreteMeasure {
 public:
  DiscreteMeasure(Matrix atoms, Vector weights);

  /// Uniform weights 1/N.
  static DiscreteMeasure uniform(Matrix atoms);

  /// Empirical measure of a sample (one point per column). Bitwise equal
  /// points are merged, so integrals over the result equal the normalized
  /// sums over all index tuples of the raw sample.
  static DiscreteMeasure empirical(const Matrix& samples);

  Eigen::Index size() const noexcept { return atoms_.cols(); }
  Eigen::Index ambient_dim() const noexcept { return atoms_.rows(); }
  const Matrix& atoms() const noexcept { return atoms_; }
  const Vector& weights() const noexcept { return weights_; }
  auto atom(Eigen::Index j) const { return atoms_.col(j); }
  double weight(Eigen::Index j) const { return weights_(j); }

 private:
  Matrix atoms_;
  Vector weights_;
};

Vector center_of_mass(const DiscreteMeasure& mu);

/// Largest pairwise atom distance.
double diameter(const DiscreteMeasure& mu);

struct SpectralSummary {
  Vector x_cm;
  Spectrum spectrum;
  double total_variance = 0.0;
};

SpectralSummary spectral_summary(const DiscreteMeasure& mu);

struct LsFit {
  AffineFlat flat;
  double e2 = 0.0;
  /// False when sigma_d and sigma_{d+1} are tied (to 1e-10 sigma_1), in which
  /// case other minimizing flats exist.
  bool unique = true;
};

/// Least-squares d-flat and its error. With `anchor`, only flats through
/// the anchor are considered (anchor = 0 gives the linear variant).
LsFit ls_flat(const DiscreteMeasure& mu, int d,
              const std::optional<Vector>& anchor = {});

/// e_2^2 of the uniform empirical measure on the samples (columns).
double empirical_ls_error(const Matrix& samples, int d);

/// Sum_j w_j dist^2(x_j, flat).
double mean_squared_distance(const DiscreteMeasure& mu, const AffineFlat& flat);

struct RegularityProbe {
  double c_est = 0.0;
  /// Per-radius maxima of mu(B(x,t)) / t^gamma, aligned with `radii`.
  std::vector<double> per_radius;
  std::vector<double> radii;
  /// Heuristic: the ratio does not blow up at the finest radius (growth
  /// factor at most 1.5 between the two smallest radii).
  bool satisfied_upper = false;
};

/// Upper-regularity diagnostic on a radius grid. With no radii, uses
/// diam * 2^-k for k = 1..8.
RegularityProbe regularity_probe(const DiscreteMeasure& mu, double gamma,
                                 std::optional<std::vector<double>> radii = {});

}  // namespace gcnlab
