#pragma once

// d-separation certificates: sets of atoms whose product supports uniformly
// non-degenerate simplices, found by search and always re-verified by full
// enumeration over the product of the returned sets.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "gcnlab/integrals.hpp"
#include "gcnlab/measure.hpp"

namespace gcnlab {

enum class SeparationFlavor {
  plain,        ///< d+1 sets, M_d(X) >= omega diam^d
  central,      ///< d sets with x_cm as the extra vertex
  simplex_wrt,  ///< d+2 nested pairs V_i in U_i, all faces of the (d+1)-simplex
  robust,       ///< d sets with x_cm; M_d^2 >= omega * volume_moment(mu, d)
};

std::string to_string(SeparationFlavor flavor);
SeparationFlavor parse_flavor(std::string_view name);

using AtomSet = std::vector<Eigen::Index>;

struct SeparationCertificate {
  SeparationFlavor flavor = SeparationFlavor::plain;
  int d = 1;
  std::vector<AtomSet> sets;   ///< V_i
  std::vector<AtomSet> outer;  ///< U_i (simplex_wrt only)
  double omega = 0.0;
  double epsilon = 0.0;
  double tau = 0.0;            ///< simplex_wrt only
};

/// Number of sets a certificate of this flavor carries.
int set_count(SeparationFlavor flavor, int d);

/// Builds a certificate from explicit sets, computing the best omega, epsilon
/// and tau they support. For simplex_wrt, `outer` defaults to `sets`.
SeparationCertificate make_certificate(const DiscreteMeasure& mu, int d,
                                       SeparationFlavor flavor,
                                       std::vector<AtomSet> sets,
                                       std::vector<AtomSet> outer = {});

struct CertificateCheck {
  bool valid = false;
  double omega = 0.0;
  double epsilon = 0.0;
  double tau = 0.0;
  std::string reason;
};

/// Recomputes omega/epsilon/tau by enumeration and checks that the claimed
/// constants hold (to 1e-12 relative).
CertificateCheck verify_certificate(const DiscreteMeasure& mu,
                                    const SeparationCertificate& cert);

struct SearchOptions {
  std::uint64_t budget = kDefaultEnumerationCap;
  /// Growing a set is accepted only while omega stays at or above this
  /// fraction of the best singleton omega.
  double growth_fraction = 0.5;
  bool grow = true;
};

/// Exhaustive search over singleton tuples for the largest normalized
/// volume, then greedy growth of the sets while omega^2 * epsilon^k improves.
/// Returns nothing when no tuple has positive volume.
std::optional<SeparationCertificate> certify_separation(
    const DiscreteMeasure& mu, int d, SeparationFlavor flavor,
    const SearchOptions& options = {});

struct EitherOr {
  bool has_positive_simplex = false;
  bool e2_prev_positive = false;
};

/// The two computable statements of the d-separation characterization:
/// some d-simplex on the support has positive volume; e_2(mu, d-1) > 0.
EitherOr lemma_either_or(const DiscreteMeasure& mu, int d,
                         std::uint64_t cap = kDefaultEnumerationCap);

}  // namespace gcnlab
