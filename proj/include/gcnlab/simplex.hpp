#pragma once

#include <initializer_list>

#include "gcnlab/linalg.hpp"

namespace gcnlab {

/// An ordered tuple of k+1 points in R^D (a k-simplex). Vertices are stored
/// as the columns of a D x (k+1) matrix. Repeated vertices are allowed.
class Simplex {
 public:
  explicit Simplex(Matrix vertices);

  /// Convenience for literals: one initializer list per vertex.
  static Simplex from_rows(
      std::initializer_list<std::initializer_list<double>> rows);

  Eigen::Index num_vertices() const noexcept { return vertices_.cols(); }
  /// n for an n-simplex.
  Eigen::Index order() const noexcept { return vertices_.cols() - 1; }
  Eigen::Index ambient_dim() const noexcept { return vertices_.rows(); }

  auto vertex(Eigen::Index i) const { return vertices_.col(i); }
  const Matrix& vertices() const noexcept { return vertices_; }

 private:
  Matrix vertices_;
};

/// n-volume M_n of the parallelotope spanned by the edges at x_0.
/// M_0 of a single point is 1.
double volume(const Simplex& x);

double diam(const Simplex& x);
double min_edge(const Simplex& x);
double max_at0(const Simplex& x);
double min_at0(const Simplex& x);

/// min_at0 / max_at0. Throws undefined_scale when min_edge(x) == 0.
double scale_at0(const Simplex& x);

/// Distance from x_i to the affine span of the remaining vertices.
double height(const Simplex& x, Eigen::Index i);

/// M_n(X) over the product of the edge lengths at x_i; 0 when any edge of X
/// has length zero.
double polar_sine(const Simplex& x, Eigen::Index i);

Simplex remove_vertex(const Simplex& x, Eigen::Index i);
Simplex replace_vertex(const Simplex& x, const Vector& y, Eigen::Index i);

}  // namespace gcnlab
