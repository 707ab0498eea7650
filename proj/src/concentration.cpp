#include "gcnlab/concentration.hpp"

#include <cmath>

#include "gcnlab/bounds.hpp"
#include "gcnlab/error.hpp"
#include "gcnlab/rng.hpp"

namespace gcnlab {

ConcentrationSummary concentration_experiment(
    const DiscreteMeasure& mu, const ConcentrationParams& params) {
  if (params.trials == 0)
    throw Error(ErrorCode::invalid_argument,
                "concentration_experiment: trials must be positive");
  if (params.sample_size == 0)
    throw Error(ErrorCode::invalid_argument,
                "concentration_experiment: sample size must be positive");
  if (!(params.delta > 0.0 && params.delta < 1.0))
    throw Error(ErrorCode::invalid_argument,
                "concentration_experiment: delta must lie in (0, 1)");
  const int d = params.d;

  std::optional<SeparationCertificate> cert = params.certificate;
  if (cert) {
    if (!verify_certificate(mu, *cert).valid)
      throw Error(ErrorCode::invalid_argument,
                  "concentration_experiment: certificate does not verify");
  } else {
    cert = certify_separation(mu, d, SeparationFlavor::plain, params.search);
  }
  if (!cert)
    throw Error(ErrorCode::degenerate_measure,
                "concentration_experiment: measure is not d-separated");

  ConcentrationSummary s;
  s.trials = params.trials;
  s.sample_size = params.sample_size;
  s.omega = cert->omega;
  s.epsilon = cert->epsilon;
  s.delta = params.delta;
  s.delta_sep = params.delta_sep.value_or(
      params.delta < cert->epsilon ? params.delta : cert->epsilon / 2.0);
  if (!(s.delta_sep > 0.0 && s.delta_sep < cert->epsilon))
    throw Error(ErrorCode::invalid_argument,
                "concentration_experiment: delta_sep must lie in (0, epsilon)");
  s.diam_mu = diameter(mu);

  IntegralSpec dls;
  dls.kind = GcnKind::dls;
  dls.d = d;
  s.integral_c_dls_sq = integral_exact(mu, dls);
  const double e2 = ls_flat(mu, d).e2;
  s.e2_squared = e2 * e2;
  const auto n = static_cast<double>(params.sample_size);
  s.kappa = params.delta / ((d + 2.0) * s.diam_mu * s.diam_mu) *
            s.integral_c_dls_sq;
  s.floor_delta = 1.0 - 2.0 * std::exp(-2.0 * n * s.kappa * s.kappa);
  s.floor_sep =
      1.0 - (d + 1.0) * std::exp(-2.0 * n * s.delta_sep * s.delta_sep);

  const double base = 1.0 / (s.omega * s.omega);
  const double k_delta = (1.0 + params.delta) / (1.0 - params.delta) * base /
                         std::pow(s.epsilon, d + 1);
  const double k_sep = base / std::pow(s.epsilon - s.delta_sep, d + 1);
  const double scale = s.diam_mu * s.diam_mu;

  const CounterRng rng(params.seed);
  const WeightedIndexSampler sampler(mu.weights());
  double sum_e2 = 0.0, sum_c = 0.0;
  for (std::size_t trial = 0; trial < params.trials; ++trial) {
    const CounterRng trial_rng = rng.split(trial);
    std::vector<std::size_t> counts(static_cast<std::size_t>(mu.size()), 0);
    for (std::size_t i = 0; i < params.sample_size; ++i)
      ++counts[static_cast<std::size_t>(sampler(trial_rng.uniform(i, 0)))];
    // The sample's empirical measure: atoms hit, weighted by frequency.
    std::vector<Eigen::Index> hit;
    for (std::size_t j = 0; j < counts.size(); ++j)
      if (counts[j] > 0) hit.push_back(static_cast<Eigen::Index>(j));
    Matrix atoms(mu.ambient_dim(), static_cast<Eigen::Index>(hit.size()));
    Vector w(static_cast<Eigen::Index>(hit.size()));
    for (std::size_t k = 0; k < hit.size(); ++k) {
      atoms.col(static_cast<Eigen::Index>(k)) = mu.atom(hit[k]);
      w(static_cast<Eigen::Index>(k)) =
          static_cast<double>(counts[static_cast<std::size_t>(hit[k])]) / n;
    }
    const DiscreteMeasure emp(std::move(atoms), std::move(w));
    const int dd = std::min<int>(d, static_cast<int>(emp.ambient_dim()));
    const double emp_e2 = ls_flat(emp, dd).e2;
    const double e2sq = emp_e2 * emp_e2;
    const double csq = integral_exact(emp, dls);
    sum_e2 += e2sq;
    sum_c += csq;
    const bool left = bound_holds(csq, e2sq, scale);
    if (left) ++s.left_holds;
    if (left && bound_holds(e2sq, k_delta * csq, scale)) ++s.sandwich_delta_holds;
    if (left && bound_holds(e2sq, k_sep * csq, scale)) ++s.sandwich_sep_holds;
  }
  s.mean_empirical_e2_sq = sum_e2 / static_cast<double>(params.trials);
  s.mean_empirical_c_dls_sq = sum_c / static_cast<double>(params.trials);
  return s;
}

}  // namespace gcnlab
