#pragma once

// Geometric condition numbers of a (d+1)-simplex X = (x_0, ..., x_{d+1}).
// Each GCN scales like a length, vanishes exactly when the vertices lie on a
// common d-flat, and returns 0 (rather than throwing) on degenerate input.

#include <optional>
#include <string>
#include <string_view>

#include "gcnlab/simplex.hpp"

namespace gcnlab {

enum class GcnKind {
  vol,
  vol_mu,
  pol,
  dls,
  ht,
  curvature_vol,
  // Integral-only kinds on center-of-mass anchored simplices; they need the
  // whole measure and are evaluated by the estimators.
  dsh,
  vol_dsh,
};

std::string to_string(GcnKind kind);
GcnKind parse_gcn_kind(std::string_view name);

/// Intrinsic dimension d of a simplex with d+2 vertices.
inline int gcn_dim(const Simplex& x) {
  return static_cast<int>(x.num_vertices()) - 2;
}

/// M_{d+1}(X) / diam(X)^d.
double c_vol(const Simplex& x);

/// M_{d+1}(X) / diam_mu^d.
double c_vol_mu(const Simplex& x, double diam_mu);

/// diam(X) times the root mean square of the polar sines at every vertex.
double c_pol(const Simplex& x);

/// Root mean squared distance of the vertices to their best d-flat. With an
/// anchor, only flats through the anchor compete.
double c_dls(const Simplex& x, const std::optional<Vector>& anchor = {});

/// Smallest vertex height.
double c_ht(const Simplex& x);

/// M_{d+1}(X) / diam(X)^((d+1)^2). Discrete curvature, not a GCN.
double curvature_vol(const Simplex& x);

/// Dispatch for the pointwise kinds. `diam_mu` is only read for vol_mu.
double evaluate_gcn(GcnKind kind, const Simplex& x, double diam_mu = 0.0,
                    const std::optional<Vector>& dls_anchor = {});

}  // namespace gcnlab
