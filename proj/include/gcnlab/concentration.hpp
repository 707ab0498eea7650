#pragma once

#include <cstdint>
#include <optional>

#include "gcnlab/separation.hpp"

namespace gcnlab {

struct ConcentrationParams {
  int d = 1;
  std::size_t sample_size = 200;  ///< N
  std::size_t trials = 500;
  double delta = 0.5;             ///< for the (1+delta)/(1-delta) sandwich
  /// delta for the epsilon-shift sandwich; must lie in (0, epsilon).
  /// Defaults to delta when delta < epsilon, else epsilon / 2.
  std::optional<double> delta_sep;
  std::uint64_t seed = 0;
  std::optional<SeparationCertificate> certificate;
  SearchOptions search;
};

struct ConcentrationSummary {
  std::size_t trials = 0;
  std::size_t sample_size = 0;
  double omega = 0.0;
  double epsilon = 0.0;
  double delta = 0.0;
  double delta_sep = 0.0;
  double diam_mu = 0.0;
  double integral_c_dls_sq = 0.0;  ///< population value
  double e2_squared = 0.0;         ///< population value
  double kappa = 0.0;
  double floor_delta = 0.0;        ///< 1 - 2 exp(-2 N kappa^2)
  double floor_sep = 0.0;          ///< 1 - (d+1) exp(-2 N delta_sep^2)
  std::size_t left_holds = 0;      ///< empirical c_dls^2 <= empirical e2^2
  std::size_t sandwich_delta_holds = 0;
  std::size_t sandwich_sep_holds = 0;
  double mean_empirical_e2_sq = 0.0;
  double mean_empirical_c_dls_sq = 0.0;

  double left_frequency() const { return ratio(left_holds); }
  double sandwich_delta_frequency() const { return ratio(sandwich_delta_holds); }
  double sandwich_sep_frequency() const { return ratio(sandwich_sep_holds); }

 private:
  double ratio(std::size_t k) const {
    return trials == 0 ? 0.0
                       : static_cast<double>(k) / static_cast<double>(trials);
  }
};

/// Repeatedly draws N-samples from mu and checks the two-sided comparison
/// between the empirical LS error and the empirical c_dls^2 average (all
/// ordered index tuples of the sample).
ConcentrationSummary concentration_experiment(const DiscreteMeasure& mu,
                                              const ConcentrationParams& params);

}  // namespace gcnlab
