#include "gcnlab/simplex.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "gcnlab/error.hpp"

namespace gcnlab {

namespace {

constexpr double kRankTol = 1e-10;

void check_index(const Simplex& x, Eigen::Index i, const char* where) {
  if (i < 0 || i >= x.num_vertices())
    throw Error(ErrorCode::index_out_of_range,
                std::string(where) + ": vertex index " + std::to_string(i) +
                    " out of range");
}

void require_edge(const Simplex& x, const char* where) {
  if (x.num_vertices() < 2)
    throw Error(ErrorCode::invalid_argument,
                std::string(where) + ": simplex needs at least two vertices");
}

}  // namespace

Simplex::Simplex(Matrix vertices) : vertices_(std::move(vertices)) {
  if (vertices_.cols() < 1 || vertices_.rows() < 1)
    throw Error(ErrorCode::invalid_argument,
                "Simplex: needs at least one vertex of dimension >= 1");
  if (!vertices_.allFinite())
    throw Error(ErrorCode::invalid_argument, "Simplex: non-finite coordinate");
}

Simplex Simplex::from_rows(
    std::initializer_list<std::initializer_list<double>> rows) {
  if (rows.size() == 0)
    throw Error(ErrorCode::invalid_argument, "Simplex: no vertices");
  const auto dim = static_cast<Eigen::Index>(rows.begin()->size());
  Matrix m(dim, static_cast<Eigen::Index>(rows.size()));
  Eigen::Index j = 0;
  for (const auto& row : rows) {
    if (static_cast<Eigen::Index>(row.size()) != dim)
      throw Error(ErrorCode::dimension_mismatch,
                  "Simplex: vertices of different dimension");
    Eigen::Index i = 0;
    for (const double v : row) m(i++, j) = v;
    ++j;
  }
  return Simplex(std::move(m));
}

double volume(const Simplex& x) {
  const auto n = x.order();
  if (n == 0) return 1.0;
  if (n > x.ambient_dim()) return 0.0;
  const Matrix& v = x.vertices();
  Matrix edges = v.rightCols(n).colwise() - v.col(0);
  Eigen::HouseholderQR<Eigen::Ref<Matrix>> qr(edges);
  double m = 1.0;
  for (Eigen::Index i = 0; i < n; ++i) m *= std::abs(qr.matrixQR()(i, i));
  return m;
}

double diam(const Simplex& x) {
  require_edge(x, "diam");
  double best = 0.0;
  const Matrix& v = x.vertices();
  for (Eigen::Index i = 0; i < v.cols(); ++i)
    for (Eigen::Index j = i + 1; j < v.cols(); ++j)
      best = std::max(best, (v.col(i) - v.col(j)).norm());
  return best;
}

double min_edge(const Simplex& x) {
  require_edge(x, "min_edge");
  double best = std::numeric_limits<double>::infinity();
  const Matrix& v = x.vertices();
  for (Eigen::Index i = 0; i < v.cols(); ++i)
    for (Eigen::Index j = i + 1; j < v.cols(); ++j)
      best = std::min(best, (v.col(i) - v.col(j)).norm());
  return best;
}

double max_at0(const Simplex& x) {
  require_edge(x, "max_at0");
  double best = 0.0;
  for (Eigen::Index j = 1; j < x.num_vertices(); ++j)
    best = std::max(best, (x.vertex(j) - x.vertex(0)).norm());
  return best;
}

double min_at0(const Simplex& x) {
  require_edge(x, "min_at0");
  double best = std::numeric_limits<double>::infinity();
  for (Eigen::Index j = 1; j < x.num_vertices(); ++j)
    best = std::min(best, (x.vertex(j) - x.vertex(0)).norm());
  return best;
}

double scale_at0(const Simplex& x) {
  if (min_edge(x) == 0.0)
    throw Error(ErrorCode::undefined_scale,
                "scale_at0: simplex has a zero-length edge");
  return min_at0(x) / max_at0(x);
}

double height(const Simplex& x, Eigen::Index i) {
  check_index(x, i, "height");
  require_edge(x, "height");
  const Matrix& v = x.vertices();
  const Eigen::Index first = (i == 0) ? 1 : 0;
  Matrix directions(v.rows(), v.cols() - 2);
  Eigen::Index k = 0;
  double largest = 0.0;
  for (Eigen::Index j = 0; j < v.cols(); ++j) {
    if (j == i || j == first) continue;
    directions.col(k) = v.col(j) - v.col(first);
    largest = std::max(largest, directions.col(k).norm());
    ++k;
  }
  const Matrix basis = orthonormal_basis(directions, kRankTol * largest);
  Vector r = v.col(i) - v.col(first);
  for (int pass = 0; pass < 2; ++pass) r -= basis * (basis.transpose() * r);
  return r.norm();
}

double polar_sine(const Simplex& x, Eigen::Index i) {
  check_index(x, i, "polar_sine");
  require_edge(x, "polar_sine");
  if (min_edge(x) == 0.0) return 0.0;
  double denom = 1.0;
  for (Eigen::Index j = 0; j < x.num_vertices(); ++j)
    if (j != i) denom *= (x.vertex(j) - x.vertex(i)).norm();
  return volume(x) / denom;
}

Simplex remove_vertex(const Simplex& x, Eigen::Index i) {
  check_index(x, i, "remove_vertex");
  if (x.num_vertices() < 2)
    throw Error(ErrorCode::invalid_argument,
                "remove_vertex: cannot remove the only vertex");
  const Matrix& v = x.vertices();
  Matrix out(v.rows(), v.cols() - 1);
  out.leftCols(i) = v.leftCols(i);
  out.rightCols(v.cols() - 1 - i) = v.rightCols(v.cols() - 1 - i);
  return Simplex(std::move(out));
}

Simplex replace_vertex(const Simplex& x, const Vector& y, Eigen::Index i) {
  check_index(x, i, "replace_vertex");
  if (y.size() != x.ambient_dim())
    throw Error(ErrorCode::dimension_mismatch,
                "replace_vertex: replacement has wrong dimension");
  Matrix out = x.vertices();
  out.col(i) = y;
  return Simplex(std::move(out));
}

}  // namespace gcnlab
