#pragma once

// Shared test support: hand-rolled random generators and independent
// oracles. Oracles avoid the library's own kernels: determinants use long
// double Gaussian elimination, spectra use Eigen's self-adjoint solver, and
// elementary symmetric polynomials use subset enumeration.

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <functional>
#include <random>
#include <vector>

#include "gcnlab/measure.hpp"
#include "gcnlab/simplex.hpp"

namespace testing {

using gcnlab::DiscreteMeasure;
using gcnlab::Matrix;
using gcnlab::Simplex;
using gcnlab::Vector;

// ---------------------------------------------------------------- generators

class Gen {
 public:
  explicit Gen(std::uint64_t seed) : engine_(seed) {}

  double uniform(double lo = 0.0, double hi = 1.0) {
    return std::uniform_real_distribution<double>(lo, hi)(engine_);
  }
  double normal() { return std::normal_distribution<double>(0.0, 1.0)(engine_); }
  int integer(int lo, int hi) {
    return std::uniform_int_distribution<int>(lo, hi)(engine_);
  }

  Matrix points(Eigen::Index dim, Eigen::Index n) {
    Matrix m(dim, n);
    for (Eigen::Index j = 0; j < n; ++j)
      for (Eigen::Index i = 0; i < dim; ++i) m(i, j) = uniform(-1.0, 1.0);
    return m;
  }

  /// Random simplex with `count` vertices; sometimes degenerate on purpose
  /// (a repeated vertex or a vertex inside the span of the others).
  Simplex simplex(Eigen::Index dim, Eigen::Index count, bool allow_degenerate = true) {
    Matrix v = points(dim, count);
    if (allow_degenerate && count >= 2) {
      const int mode = integer(0, 9);
      if (mode == 0) {
        v.col(count - 1) = v.col(0);
      } else if (mode == 1 && count >= 3) {
        const double t = uniform();
        v.col(count - 1) = t * v.col(0) + (1.0 - t) * v.col(1);
      }
    }
    return Simplex(v);
  }

  /// Random atomic measure; weights are positive and normalized.
  DiscreteMeasure measure(Eigen::Index dim, Eigen::Index n, bool uniform_weights = false) {
    Matrix atoms = points(dim, n);
    Vector w(n);
    for (Eigen::Index j = 0; j < n; ++j) w(j) = uniform_weights ? 1.0 : uniform(0.1, 1.0);
    w /= w.sum();
    return DiscreteMeasure(atoms, w);
  }

  /// Random measure whose atoms are small perturbations of a random d-flat,
  /// which keeps separation constants away from zero.
  DiscreteMeasure near_flat_measure(Eigen::Index dim, Eigen::Index n, int d, double noise) {
    Matrix basis = points(dim, d);
    const Vector base = points(dim, 1).col(0);
    Matrix atoms(dim, n);
    for (Eigen::Index j = 0; j < n; ++j) {
      Vector p = base;
      for (int k = 0; k < d; ++k) p += uniform(-1.0, 1.0) * basis.col(k);
      for (Eigen::Index i = 0; i < dim; ++i) p(i) += noise * uniform(-1.0, 1.0);
      atoms.col(j) = p;
    }
    return DiscreteMeasure::uniform(atoms);
  }

  std::mt19937_64& engine() { return engine_; }

 private:
  std::mt19937_64 engine_;
};

// ------------------------------------------------------------------- oracles

inline long double oracle_det(std::vector<std::vector<long double>> a) {
  const std::size_t n = a.size();
  long double det = 1.0L;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t piv = c;
    for (std::size_t r = c + 1; r < n; ++r)
      if (std::fabs(a[r][c]) > std::fabs(a[piv][c])) piv = r;
    if (a[piv][c] == 0.0L) return 0.0L;
    if (piv != c) {
      std::swap(a[piv], a[c]);
      det = -det;
    }
    det *= a[c][c];
    for (std::size_t r = c + 1; r < n; ++r) {
      const long double f = a[r][c] / a[c][c];
      for (std::size_t k = c; k < n; ++k) a[r][k] -= f * a[c][k];
    }
  }
  return det;
}

inline double oracle_gram_det(const Matrix& vectors) {
  const auto n = static_cast<std::size_t>(vectors.cols());
  std::vector<std::vector<long double>> g(n, std::vector<long double>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      long double s = 0.0L;
      for (Eigen::Index r = 0; r < vectors.rows(); ++r)
        s += static_cast<long double>(vectors(r, static_cast<Eigen::Index>(i))) *
             vectors(r, static_cast<Eigen::Index>(j));
      g[i][j] = s;
    }
  return static_cast<double>(std::max(0.0L, oracle_det(g)));
}

inline Matrix edges_at0(const Matrix& v) {
  Matrix e = v.rightCols(v.cols() - 1);
  e.colwise() -= v.col(0);
  return e;
}

inline double oracle_volume(const Matrix& v) {
  if (v.cols() - 1 > v.rows()) return 0.0;
  return std::sqrt(oracle_gram_det(edges_at0(v)));
}

inline double oracle_diam(const Matrix& v) {
  double m = 0.0;
  for (Eigen::Index i = 0; i < v.cols(); ++i)
    for (Eigen::Index j = i + 1; j < v.cols(); ++j) m = std::max(m, (v.col(i) - v.col(j)).norm());
  return m;
}

/// Eigenvalues of the weighted covariance about the weighted mean, sorted
/// nonincreasing.
inline std::vector<double> oracle_cov_eigs(const Matrix& atoms, const Vector& w) {
  const Vector mean = atoms * w;
  Matrix c = Matrix::Zero(atoms.rows(), atoms.rows());
  for (Eigen::Index j = 0; j < atoms.cols(); ++j) {
    const Vector r = atoms.col(j) - mean;
    c += w(j) * r * r.transpose();
  }
  Eigen::SelfAdjointEigenSolver<Matrix> es(c);
  std::vector<double> out(es.eigenvalues().data(), es.eigenvalues().data() + c.rows());
  for (auto& x : out) x = std::max(0.0, x);
  std::sort(out.begin(), out.end(), std::greater<>());
  return out;
}

inline double oracle_e2_sq(const Matrix& atoms, const Vector& w, int d) {
  const auto eig = oracle_cov_eigs(atoms, w);
  double s = 0.0;
  for (std::size_t i = static_cast<std::size_t>(d); i < eig.size(); ++i) s += eig[i];
  return s;
}

inline double oracle_e2_sq(const DiscreteMeasure& mu, int d) {
  return oracle_e2_sq(mu.atoms(), mu.weights(), d);
}

/// sqrt of the mean squared distance of the vertices to their best d-flat,
/// with d = vertices - 2.
inline double oracle_c_dls(const Matrix& v) {
  const auto n = v.cols();
  return std::sqrt(oracle_e2_sq(v, Vector::Constant(n, 1.0 / static_cast<double>(n)),
                                static_cast<int>(n) - 2));
}

inline double oracle_elementary(const std::vector<double>& values, int k) {
  const std::size_t n = values.size();
  if (k == 0) return 1.0;
  if (static_cast<std::size_t>(k) > n) return 0.0;
  long double total = 0.0L;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
    if (__builtin_popcountll(mask) != k) continue;
    long double p = 1.0L;
    for (std::size_t i = 0; i < n; ++i)
      if (mask >> i & 1U) p *= values[i];
    total += p;
  }
  return static_cast<double>(total);
}

/// Sum over all ordered `arity`-tuples of atoms of (product of weights) * f,
/// where f receives the tuple's vertices as columns (x_cm first if
/// `prefix` is given).
inline double oracle_tuple_sum(const DiscreteMeasure& mu, int arity,
                               const std::function<double(const Matrix&)>& f,
                               const Vector* prefix = nullptr) {
  const auto n = mu.size();
  const int offset = prefix ? 1 : 0;
  Matrix buf(mu.ambient_dim(), arity + offset);
  if (prefix) buf.col(0) = *prefix;
  std::vector<Eigen::Index> idx(static_cast<std::size_t>(arity), 0);
  long double total = 0.0L;
  while (true) {
    double w = 1.0;
    for (int s = 0; s < arity; ++s) {
      buf.col(s + offset) = mu.atom(idx[static_cast<std::size_t>(s)]);
      w *= mu.weight(idx[static_cast<std::size_t>(s)]);
    }
    total += static_cast<long double>(w) * f(buf);
    int s = 0;
    while (s < arity && ++idx[static_cast<std::size_t>(s)] == n) idx[static_cast<std::size_t>(s++)] = 0;
    if (s == arity) break;
  }
  return static_cast<double>(total);
}

inline DiscreteMeasure t3() {
  return DiscreteMeasure::uniform(Simplex::from_rows({{0, 0}, {1, 0}, {0, 1}}).vertices());
}

inline DiscreteMeasure sq4() {
  return DiscreteMeasure::uniform(
      Simplex::from_rows({{1, 0}, {-1, 0}, {0, 1}, {0, -1}}).vertices());
}

inline bool rel_close(double a, double b, double rel, double abs_floor = 0.0) {
  return std::abs(a - b) <= rel * std::max(std::abs(a), std::abs(b)) + abs_floor;
}

}  // namespace testing
