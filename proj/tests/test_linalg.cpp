#include <doctest.h>

#include "gcnlab/error.hpp"
#include "gcnlab/linalg.hpp"
#include "support.hpp"

using namespace gcnlab;
using testing::Gen;

TEST_CASE("gram_det examples") {
  Matrix a(2, 2);
  a << 1, 0, 0, 1;
  CHECK(gram_det(a) == doctest::Approx(1.0));
  a << 1, 2, 0, 0;
  CHECK(gram_det(a) == doctest::Approx(0.0));
  a << 1, 1, 1, -1;
  CHECK(gram_det(a) == doctest::Approx(4.0));
  CHECK(gram_det(Matrix(3, 0)) == 1.0);
  CHECK(gram_det(Matrix::Ones(2, 3)) == 0.0);

  std::vector<Vector> ragged{Vector::Ones(2), Vector::Ones(3)};
  CHECK_THROWS_AS(gram_det(std::span<const Vector>(ragged)), Error);
}

TEST_CASE("gram_det properties against the long double oracle") {
  Gen g(11);
  for (int trial = 0; trial < 200; ++trial) {
    const auto dim = g.integer(1, 5);
    const auto n = g.integer(1, dim);
    const Matrix v = g.points(dim, n);
    const double det = gram_det(v);
    CHECK(testing::rel_close(det, testing::oracle_gram_det(v), 1e-9, 1e-14));

    // Permutation, rotation and scaling.
    Matrix perm = v;
    perm.col(0).swap(perm.col(n - 1));
    CHECK(testing::rel_close(gram_det(perm), det, 1e-9, 1e-14));
    const Eigen::HouseholderQR<Matrix> qr(g.points(dim, dim));
    const Matrix q = qr.householderQ();
    CHECK(testing::rel_close(gram_det(q * v), det, 1e-9, 1e-14));
    const double t = g.uniform(0.5, 2.0);
    CHECK(testing::rel_close(gram_det(t * v), std::pow(t, 2 * n) * det, 1e-9, 1e-14));
  }
}

TEST_CASE("dist_to_flat examples and Pythagoras") {
  const AffineFlat x_axis(Vector::Zero(2), Vector::Unit(2, 0));
  CHECK(dist_to_flat(Vector::Unit(2, 1), x_axis) == doctest::Approx(1.0));
  CHECK(dist_to_flat(Vector::Unit(2, 0) * 3.0, x_axis) == doctest::Approx(0.0));
  CHECK(dist_to_flat(Vector::Ones(2), AffineFlat::point(Vector::Zero(2))) ==
        doctest::Approx(std::sqrt(2.0)));
  CHECK_THROWS_AS(dist_to_flat(Vector::Ones(3), x_axis), Error);

  Gen g(12);
  for (int trial = 0; trial < 200; ++trial) {
    const auto dim = g.integer(1, 5);
    const auto d = g.integer(0, dim);
    const auto flat = AffineFlat::spanned(g.points(dim, 1).col(0), g.points(dim, d));
    const Vector p = g.points(dim, 1).col(0);
    const Vector r = p - flat.base();
    const double along = (flat.basis().transpose() * r).squaredNorm();
    const double dist = dist_to_flat(p, flat);
    CHECK(std::abs(dist * dist + along - r.squaredNorm()) <= 1e-10);
  }
}

TEST_CASE("AffineFlat validates its basis") {
  Matrix bad(2, 1);
  bad << 1, 1;
  CHECK_THROWS_AS(AffineFlat(Vector::Zero(2), bad), Error);
  CHECK_THROWS_AS(AffineFlat(Vector::Zero(3), Matrix::Identity(2, 2)), Error);
  const auto flat = AffineFlat::spanned(Vector::Zero(3), Matrix::Ones(3, 2));
  CHECK(flat.dim() == 1);
}

TEST_CASE("weighted_spectrum examples") {
  Matrix a(1, 2);
  a << 0, 1;
  auto s = weighted_spectrum(a, Vector::Constant(2, 0.5), Vector::Constant(1, 0.5));
  CHECK(s.values(0) == doctest::Approx(0.5));

  Matrix sq(2, 4);
  sq << 1, -1, 0, 0, 0, 0, 1, -1;
  s = weighted_spectrum(sq, Vector::Constant(4, 0.25), Vector::Zero(2));
  CHECK(s.values(0) * s.values(0) == doctest::Approx(0.5));
  CHECK(s.values(1) * s.values(1) == doctest::Approx(0.5));

  Matrix one(3, 1);
  one << 1, 2, 3;
  s = weighted_spectrum(one, Vector::Ones(1), one.col(0));
  CHECK(s.values.maxCoeff() == 0.0);

  CHECK_THROWS_AS(weighted_spectrum(sq, Vector::Constant(4, 0.3), Vector::Zero(2)), Error);
  CHECK_THROWS_AS(weighted_spectrum(sq, Vector::Constant(3, 1.0 / 3), Vector::Zero(2)), Error);
}

TEST_CASE("weighted_spectrum matches the self-adjoint oracle") {
  Gen g(13);
  for (int trial = 0; trial < 200; ++trial) {
    const auto mu = g.measure(g.integer(1, 6), g.integer(1, 9));
    const Vector mean = mu.atoms() * mu.weights();
    const auto s = weighted_spectrum(mu.atoms(), mu.weights(), mean);
    const auto eig = testing::oracle_cov_eigs(mu.atoms(), mu.weights());
    double trace = 0.0;
    for (Eigen::Index j = 0; j < mu.size(); ++j)
      trace += mu.weight(j) * (mu.atom(j) - mean).squaredNorm();
    double total = 0.0;
    for (Eigen::Index i = 0; i < s.values.size(); ++i) {
      CHECK(std::abs(s.values(i) * s.values(i) - eig[static_cast<std::size_t>(i)]) <= 1e-12);
      if (i > 0) CHECK(s.values(i) <= s.values(i - 1));
      total += s.values(i) * s.values(i);
    }
    CHECK(testing::rel_close(total, trace, 1e-10, 1e-15));
    const Matrix gram = s.vectors.transpose() * s.vectors;
    CHECK((gram - Matrix::Identity(gram.rows(), gram.cols())).cwiseAbs().maxCoeff() <= 1e-10);
  }
}

TEST_CASE("jacobi_eigen matches the self-adjoint oracle") {
  Gen g(14);
  for (int trial = 0; trial < 100; ++trial) {
    const auto n = g.integer(1, 8);
    const Matrix b = g.points(n, n);
    const Matrix a = b + b.transpose();
    const auto eig = jacobi_eigen(a);
    Eigen::SelfAdjointEigenSolver<Matrix> es(a);
    Vector expect = es.eigenvalues().reverse();
    CHECK((eig.values - expect).cwiseAbs().maxCoeff() <= 1e-10 * (1.0 + a.norm()));
    const Matrix recon = eig.vectors * eig.values.asDiagonal() * eig.vectors.transpose();
    CHECK((recon - a).cwiseAbs().maxCoeff() <= 1e-10 * (1.0 + a.norm()));
  }
}

TEST_CASE("elementary_symmetric examples and recurrence") {
  CHECK(elementary_symmetric(std::vector<double>{1.0 / 3, 1.0 / 9}, 2) ==
        doctest::Approx(1.0 / 27));
  CHECK(elementary_symmetric(std::vector<double>{5.0, 7.0}, 0) == 1.0);
  CHECK(elementary_symmetric(std::vector<double>{0.5, 0.5}, 1) == doctest::Approx(1.0));
  CHECK(elementary_symmetric(std::vector<double>{0.5, 0.5}, 3) == 0.0);

  Gen g(15);
  for (int trial = 0; trial < 200; ++trial) {
    const int n = g.integer(0, 10);
    std::vector<double> v(static_cast<std::size_t>(n));
    for (auto& x : v) x = g.uniform(0.0, 2.0);
    const double a = g.uniform(0.0, 2.0);
    auto w = v;
    w.push_back(a);
    for (int k = 0; k <= n + 1; ++k) {
      CHECK(testing::rel_close(elementary_symmetric(v, k), testing::oracle_elementary(v, k),
                               1e-12, 1e-300));
      if (k >= 1) {
        const double lhs = elementary_symmetric(w, k);
        const double rhs = elementary_symmetric(v, k) + a * elementary_symmetric(v, k - 1);
        CHECK(testing::rel_close(lhs, rhs, 1e-12, 1e-300));
      }
    }
  }
}
