#include "gcnlab/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "gcnlab/error.hpp"

namespace gcnlab {

const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::dimension_mismatch: return "dimension_mismatch";
    case ErrorCode::invalid_argument: return "invalid_argument";
    case ErrorCode::numerical_failure: return "numerical_failure";
    case ErrorCode::undefined_scale: return "undefined_scale";
    case ErrorCode::index_out_of_range: return "index_out_of_range";
    case ErrorCode::cap_exceeded: return "cap_exceeded";
    case ErrorCode::degenerate_measure: return "degenerate_measure";
    case ErrorCode::parse_error: return "parse_error";
  }
  return "unknown";
}

namespace {

constexpr double kNegativeClamp = -1e-12;
constexpr double kOrthoTol = 1e-10;
constexpr int kMaxSweeps = 64;

}  // namespace

double gram_det(const Matrix& vectors) {
  const auto n = vectors.cols();
  if (n == 0) return 1.0;
  if (n > vectors.rows()) return 0.0;
  const Matrix gram = vectors.transpose() * vectors;
  const double det = gram.fullPivLu().determinant();
  if (det < 0.0) {
    if (det >= kNegativeClamp) return 0.0;
    throw Error(ErrorCode::numerical_failure,
                "gram_det: negative determinant " + std::to_string(det));
  }
  return det;
}

double gram_det(std::span<const Vector> vectors) {
  if (vectors.empty()) return 1.0;
  const auto dim = vectors.front().size();
  Matrix m(dim, static_cast<Eigen::Index>(vectors.size()));
  for (std::size_t j = 0; j < vectors.size(); ++j) {
    if (vectors[j].size() != dim)
      throw Error(ErrorCode::dimension_mismatch,
                  "gram_det: vectors of different dimension");
    m.col(static_cast<Eigen::Index>(j)) = vectors[j];
  }
  return gram_det(m);
}

Matrix orthonormal_basis(const Matrix& columns, double rank_tol) {
  Matrix q(columns.rows(), columns.cols());
  Eigen::Index rank = 0;
  for (Eigen::Index j = 0; j < columns.cols(); ++j) {
    Vector v = columns.col(j);
    for (int pass = 0; pass < 2; ++pass) {
      for (Eigen::Index i = 0; i < rank; ++i) v -= q.col(i).dot(v) * q.col(i);
    }
    const double norm = v.norm();
    if (norm > rank_tol) q.col(rank++) = v / norm;
  }
  return q.leftCols(rank);
}

AffineFlat::AffineFlat(Vector base, Matrix basis)
    : base_(std::move(base)), basis_(std::move(basis)) {
  if (basis_.cols() > 0 && basis_.rows() != base_.size())
    throw Error(ErrorCode::dimension_mismatch,
                "AffineFlat: basis and base point differ in dimension");
  if (basis_.cols() == 0) basis_.resize(base_.size(), 0);
  if (basis_.cols() > base_.size())
    throw Error(ErrorCode::invalid_argument,
                "AffineFlat: more directions than ambient dimension");
  const Matrix gram = basis_.transpose() * basis_;
  const Matrix eye = Matrix::Identity(basis_.cols(), basis_.cols());
  if (basis_.cols() > 0 && (gram - eye).cwiseAbs().maxCoeff() > kOrthoTol)
    throw Error(ErrorCode::invalid_argument,
                "AffineFlat: basis is not orthonormal");
}

AffineFlat AffineFlat::point(Vector base) {
  const auto dim = base.size();
  return AffineFlat(std::move(base), Matrix(dim, 0));
}

AffineFlat AffineFlat::spanned(Vector base, const Matrix& directions,
                               double rank_tol) {
  if (directions.cols() > 0 && directions.rows() != base.size())
    throw Error(ErrorCode::dimension_mismatch,
                "AffineFlat::spanned: dimension mismatch");
  Matrix basis = orthonormal_basis(directions, rank_tol);
  return AffineFlat(std::move(base), std::move(basis));
}

Vector AffineFlat::project(const Vector& p) const {
  const Vector r = p - base_;
  return base_ + basis_ * (basis_.transpose() * r);
}

double dist_to_flat(const Vector& p, const AffineFlat& flat) {
  if (p.size() != flat.ambient_dim())
    throw Error(ErrorCode::dimension_mismatch,
                "dist_to_flat: point and flat differ in dimension");
  Vector r = p - flat.base();
  const Matrix& b = flat.basis();
  r -= b * (b.transpose() * r);
  return r.norm();
}

Spectrum jacobi_svd(Matrix a) {
  const auto n = a.cols();
  Matrix v = Matrix::Identity(n, n);
  constexpr double eps = 1e-15;
  // Columns below this squared norm are round-off and left alone; rotating
  // them against each other can cycle without reaching the relative test.
  const double negligible = 1e-28 * a.squaredNorm();
  bool converged = n < 2;
  for (int sweep = 0; sweep < kMaxSweeps && !converged; ++sweep) {
    converged = true;
    for (Eigen::Index p = 0; p + 1 < n; ++p) {
      for (Eigen::Index q = p + 1; q < n; ++q) {
        const double alpha = a.col(p).squaredNorm();
        const double beta = a.col(q).squaredNorm();
        const double gamma = a.col(p).dot(a.col(q));
        if (alpha <= negligible || beta <= negligible) continue;
        if (std::abs(gamma) <= eps * std::sqrt(alpha * beta)) continue;
        converged = false;
        const double zeta = (beta - alpha) / (2.0 * gamma);
        const double t = std::copysign(1.0, zeta) /
                         (std::abs(zeta) + std::sqrt(1.0 + zeta * zeta));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = c * t;
        for (Eigen::Index i = 0; i < a.rows(); ++i) {
          const double ap = a(i, p), aq = a(i, q);
          a(i, p) = c * ap - s * aq;
          a(i, q) = s * ap + c * aq;
        }
        for (Eigen::Index i = 0; i < n; ++i) {
          const double vp = v(i, p), vq = v(i, q);
          v(i, p) = c * vp - s * vq;
          v(i, q) = s * vp + c * vq;
        }
      }
    }
  }
  if (!converged)
    throw Error(ErrorCode::numerical_failure,
                "jacobi_svd: no convergence within sweep limit");

  Vector sigma(n);
  for (Eigen::Index j = 0; j < n; ++j) sigma(j) = a.col(j).norm();
  std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), Eigen::Index{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](Eigen::Index l, Eigen::Index r) {
                     return sigma(l) > sigma(r);
                   });
  Spectrum out{Vector(n), Matrix(n, n)};
  for (Eigen::Index j = 0; j < n; ++j) {
    out.values(j) = sigma(order[static_cast<std::size_t>(j)]);
    out.vectors.col(j) = v.col(order[static_cast<std::size_t>(j)]);
  }
  return out;
}

SymmetricEigen jacobi_eigen(Matrix a) {
  const auto n = a.rows();
  if (a.cols() != n)
    throw Error(ErrorCode::dimension_mismatch, "jacobi_eigen: not square");
  Matrix v = Matrix::Identity(n, n);
  const double threshold = 1e-13 * a.norm();
  auto off_norm = [&] {
    double s = 0.0;
    for (Eigen::Index i = 0; i < n; ++i)
      for (Eigen::Index j = i + 1; j < n; ++j) s += 2.0 * a(i, j) * a(i, j);
    return std::sqrt(s);
  };
  int sweep = 0;
  while (off_norm() > threshold) {
    if (++sweep > kMaxSweeps)
      throw Error(ErrorCode::numerical_failure,
                  "jacobi_eigen: no convergence within sweep limit");
    for (Eigen::Index p = 0; p + 1 < n; ++p) {
      for (Eigen::Index q = p + 1; q < n; ++q) {
        const double apq = a(p, q);
        if (apq == 0.0) continue;
        const double theta = (a(q, q) - a(p, p)) / (2.0 * apq);
        const double t = std::copysign(1.0, theta) /
                         (std::abs(theta) + std::sqrt(1.0 + theta * theta));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = t * c;
        for (Eigen::Index k = 0; k < n; ++k) {
          const double akp = a(k, p), akq = a(k, q);
          a(k, p) = c * akp - s * akq;
          a(k, q) = s * akp + c * akq;
        }
        for (Eigen::Index k = 0; k < n; ++k) {
          const double apk = a(p, k), aqk = a(q, k);
          a(p, k) = c * apk - s * aqk;
          a(q, k) = s * apk + c * aqk;
        }
        a(p, q) = 0.0;
        a(q, p) = 0.0;
        for (Eigen::Index k = 0; k < n; ++k) {
          const double vkp = v(k, p), vkq = v(k, q);
          v(k, p) = c * vkp - s * vkq;
          v(k, q) = s * vkp + c * vkq;
        }
      }
    }
  }
  std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), Eigen::Index{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](Eigen::Index l, Eigen::Index r) {
                     return a(l, l) > a(r, r);
                   });
  SymmetricEigen out{Vector(n), Matrix(n, n)};
  for (Eigen::Index j = 0; j < n; ++j) {
    const auto src = order[static_cast<std::size_t>(j)];
    out.values(j) = a(src, src);
    out.vectors.col(j) = v.col(src);
  }
  return out;
}

Spectrum weighted_spectrum_unchecked(const Matrix& points,
                                     const Vector& weights,
                                     const Vector& center) {
  if (points.cols() != weights.size())
    throw Error(ErrorCode::dimension_mismatch,
                "weighted_spectrum: points and weights differ in length");
  if (points.rows() != center.size())
    throw Error(ErrorCode::dimension_mismatch,
                "weighted_spectrum: center has wrong dimension");
  Matrix data(points.cols(), points.rows());
  for (Eigen::Index j = 0; j < points.cols(); ++j) {
    if (weights(j) < 0.0)
      throw Error(ErrorCode::invalid_argument,
                  "weighted_spectrum: negative weight");
    data.row(j) = std::sqrt(weights(j)) * (points.col(j) - center).transpose();
  }
  return jacobi_svd(std::move(data));
}

Spectrum weighted_spectrum(const Matrix& points, const Vector& weights,
                           const Vector& center) {
  if (std::abs(weights.sum() - 1.0) > 1e-10)
    throw Error(ErrorCode::invalid_argument,
                "weighted_spectrum: weights do not sum to 1");
  return weighted_spectrum_unchecked(points, weights, center);
}

double elementary_symmetric(std::span<const double> values, int k) {
  if (k < 0)
    throw Error(ErrorCode::invalid_argument,
                "elementary_symmetric: negative order");
  if (k == 0) return 1.0;
  if (static_cast<std::size_t>(k) > values.size()) return 0.0;
  std::vector<double> e(static_cast<std::size_t>(k) + 1, 0.0);
  e[0] = 1.0;
  std::size_t seen = 0;
  for (const double a : values) {
    ++seen;
    const std::size_t top = std::min<std::size_t>(seen, e.size() - 1);
    for (std::size_t j = top; j >= 1; --j) e[j] += a * e[j - 1];
  }
  return e.back();
}

double elementary_symmetric(const Vector& values, int k) {
  return elementary_symmetric(
      std::span<const double>(values.data(),
                              static_cast<std::size_t>(values.size())),
      k);
}

}  // namespace gcnlab
