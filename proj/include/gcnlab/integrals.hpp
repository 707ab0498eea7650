#pragma once

// Integrals of p-th powers of GCNs over product measures: exact enumeration
// over all ordered atom tuples and seeded Monte-Carlo, plus the volume
// moments of center-of-mass anchored simplices.

#include <cstdint>
#include <optional>

#include "gcnlab/gcn.hpp"
#include "gcnlab/measure.hpp"

namespace gcnlab {

inline constexpr std::uint64_t kDefaultEnumerationCap = 100'000'000;

/// Which product domain the integral runs over.
enum class Anchor {
  none,         ///< (d+2)-tuples of atoms
  xcm_plus_d1,  ///< x_cm followed by d+1 atoms
  xcm_plus_d,   ///< x_cm followed by d atoms (the dsh kind only)
};

std::string to_string(Anchor anchor);
Anchor parse_anchor(std::string_view name);

struct MonteCarloMode {
  std::uint64_t samples = 0;
  std::uint64_t seed = 0;
};

struct IntegralSpec {
  GcnKind kind = GcnKind::vol;
  int d = 1;
  double exponent = 2.0;
  Anchor anchor = Anchor::none;
  /// Restrict to tuples whose minimal edge is at least tau * diam(mu).
  std::optional<double> tau;
  /// Exact enumeration when empty.
  std::optional<MonteCarloMode> monte_carlo;
  std::uint64_t cap = kDefaultEnumerationCap;
};

/// Number of measure-distributed vertices in one tuple.
int integral_arity(const IntegralSpec& spec);

/// Throws on inconsistent kind/anchor/exponent/tau combinations.
void validate(const IntegralSpec& spec);

/// Sum over all ordered tuples of (product of weights) * c(X)^p.
double integral_exact(const DiscreteMeasure& mu, const IntegralSpec& spec);

struct McEstimate {
  double estimate = 0.0;
  double std_error = 0.0;
  std::uint64_t samples = 0;
};

/// Mean of c(X)^p over i.i.d. tuples drawn from mu by inverse CDF, keyed by
/// (seed, tuple index). Bit-identical for a fixed seed whatever the thread
/// count.
McEstimate integral_mc(const DiscreteMeasure& mu, const IntegralSpec& spec);

/// Integral of M_m(x_cm, x_1, ..., x_m)^2 over mu^m, by enumeration.
/// Equals 1 for m = 0.
double volume_moment(const DiscreteMeasure& mu, int m,
                     std::uint64_t cap = kDefaultEnumerationCap);

struct MomentIdentity {
  double lhs = 0.0;            ///< volume_moment(mu, m)
  double rhs_paper = 0.0;      ///< e_m(sigma^2)
  double rhs_corrected = 0.0;  ///< m! e_m(sigma^2)
  std::optional<double> kappa; ///< lhs / e_m(sigma^2) when e_m > 0
};

MomentIdentity moment_identity_check(const DiscreteMeasure& mu, int m,
                                     std::uint64_t cap = kDefaultEnumerationCap);

/// Integral of the squared center-of-mass volume-sampling GCN:
/// volume_moment(mu, d+1) / volume_moment(mu, d).
double c_dsh_integral(const DiscreteMeasure& mu, int d,
                      std::uint64_t cap = kDefaultEnumerationCap);

struct SymTailRatio {
  double ratio = 0.0;  ///< e_{d+1}(sigma^2) / e_d(sigma^2)
  double tail = 0.0;   ///< sum_{j > d} sigma_j^2
};

SymTailRatio sym_tail_ratio(const Vector& sigma, int d);

}  // namespace gcnlab
