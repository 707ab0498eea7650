#pragma once

// Finite-dimensional linear algebra kernel: Gram determinants, affine flats,
// the weighted spectrum of a point cloud and elementary symmetric polynomials.

#include <span>
#include <vector>

#include <Eigen/Dense>

namespace gcnlab {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

/// Determinant of the Gram matrix of the columns of `vectors` (D x n).
/// Returns 0 when n > D. Tiny negative round-off (>= -1e-12) is clamped.
double gram_det(const Matrix& vectors);
double gram_det(std::span<const Vector> vectors);

/// Orthonormal basis of span(columns) by modified Gram-Schmidt with one
/// reorthogonalization pass. Columns whose residual falls below
/// `rank_tol` are dropped.
Matrix orthonormal_basis(const Matrix& columns, double rank_tol);

/// A d-flat: base point plus orthonormal direction basis (columns).
class AffineFlat {
 public:
  /// Validates orthonormality of `basis` to 1e-10.
  AffineFlat(Vector base, Matrix basis);

  /// A 0-flat.
  static AffineFlat point(Vector base);

  /// Flat through `base` spanned by the columns of `directions`, which need
  /// not be orthonormal or independent.
  static AffineFlat spanned(Vector base, const Matrix& directions,
                            double rank_tol = 1e-12);

  const Vector& base() const noexcept { return base_; }
  const Matrix& basis() const noexcept { return basis_; }
  Eigen::Index ambient_dim() const noexcept { return base_.size(); }
  Eigen::Index dim() const noexcept { return basis_.cols(); }

  /// Orthogonal projection of p onto the flat.
  Vector project(const Vector& p) const;

 private:
  Vector base_;
  Matrix basis_;
};

double dist_to_flat(const Vector& p, const AffineFlat& flat);

/// Singular values (nonincreasing) and matching right singular vectors
/// (columns of `vectors`).
struct Spectrum {
  Vector values;
  Matrix vectors;
};

/// Spectrum of the weighted, centered data matrix whose rows are
/// sqrt(w_j) (x_j - center). The squared values are the eigenvalues of the
/// weighted covariance sum_j w_j (x_j - center)(x_j - center)^T.
///
/// `points` holds one point per column. Weights must be nonnegative and sum
/// to 1 within 1e-10.
Spectrum weighted_spectrum(const Matrix& points, const Vector& weights,
                           const Vector& center);

/// Same, without the normalization check on the weights (used for raw second
/// moments where the weights are already validated upstream).
Spectrum weighted_spectrum_unchecked(const Matrix& points,
                                     const Vector& weights,
                                     const Vector& center);

/// One-sided (Hestenes) Jacobi SVD of `a` (rows x cols). Returns all `cols`
/// singular values, sorted nonincreasing with a stable tie order.
Spectrum jacobi_svd(Matrix a);

/// Cyclic Jacobi eigendecomposition of a symmetric matrix. Eigenvalues are
/// returned nonincreasing; eigenvectors are the matching columns.
struct SymmetricEigen {
  Vector values;
  Matrix vectors;
};
SymmetricEigen jacobi_eigen(Matrix sym);

/// Elementary symmetric polynomial e_k(values). e_0 = 1, e_k = 0 for
/// k > values.size().
double elementary_symmetric(std::span<const double> values, int k);
double elementary_symmetric(const Vector& values, int k);

}  // namespace gcnlab
