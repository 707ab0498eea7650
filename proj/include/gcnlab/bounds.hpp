#pragma once

// Numerical verification of the comparison bounds between the LS error and
// integrals of squared GCNs. Each check produces a BoundReport recording both
// sides, every constant used and the separation certificate that gates it.

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "gcnlab/integrals.hpp"
#include "gcnlab/separation.hpp"

namespace gcnlab {

enum class TheoremId {
  main_1,         ///< e2^2 <= int c_vol_mu^2 / (omega^2 eps^(d+1))
  lower_dls,      ///< int c_dls^2 <= e2^2
  pol_upper,      ///< int c_pol^2 <= C e2^2 (caller-supplied C)
  anchored,       ///< center-of-mass anchored upper and lower bounds
  deshpande,      ///< volume-sampling GCN bounds (paper and corrected forms)
  singvals,       ///< omega^2 eps^d tail <= e_{d+1}/e_d <= tail
  main_modified,  ///< large-edge restricted upper bound
};

std::string to_string(TheoremId id);
TheoremId parse_theorem(std::string_view name);

enum class BoundStatus { pass, fail, not_applicable };
std::string to_string(BoundStatus status);

struct InequalityCheck {
  std::string name;
  double lhs = 0.0;
  double rhs = 0.0;
  /// Reported-only checks do not affect the status.
  bool asserted = true;
  bool holds = false;
};

struct BoundReport {
  TheoremId theorem = TheoremId::main_1;
  int d = 0;
  /// The principal inequality (the first asserted check).
  double lhs = 0.0;
  double rhs = 0.0;
  std::map<std::string, double> constants;
  std::vector<InequalityCheck> checks;
  std::optional<SeparationCertificate> certificate;
  BoundStatus status = BoundStatus::not_applicable;
  std::string note;
  double runtime_ms = 0.0;

  bool pass() const { return status == BoundStatus::pass; }
};

struct VerifyParams {
  /// Used instead of searching when set; re-verified before use.
  std::optional<SeparationCertificate> certificate;
  SearchOptions search;
  /// Pass threshold for the pol_upper ratio.
  double pol_constant = 100.0;
  /// Monte-Carlo mode for the GCN integrals (exact when empty).
  std::optional<MonteCarloMode> monte_carlo;
  std::uint64_t cap = kDefaultEnumerationCap;
};

/// lhs <= rhs (1 + 1e-9), with an absolute floor of 1e-14 * scale for sides
/// that vanish up to round-off.
bool bound_holds(double lhs, double rhs, double scale);

BoundReport verify_bound(TheoremId theorem, const DiscreteMeasure& mu, int d,
                         const VerifyParams& params = {});

struct LegerConstants {
  double c0 = 0.0;
  double alpha0 = 0.0;
};

/// Smallest admissible C_0 and largest admissible alpha_0 of the local sine
/// inequality for a gamma-regular measure with regularity constant C_mu.
LegerConstants leger_constants(double gamma, double c_mu);

}  // namespace gcnlab
