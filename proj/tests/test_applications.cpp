#include <doctest.h>

#include "gcnlab/error.hpp"
#include "gcnlab/integrals.hpp"
#include "gcnlab/scc.hpp"
#include "gcnlab/volume_sampling.hpp"
#include "support.hpp"

using namespace gcnlab;
using testing::Gen;

namespace {

/// Two orthogonal lines through the origin in R^2, with uniform noise.
Matrix two_lines(Gen& g, int per_line, double noise, std::vector<int>* truth) {
  Matrix pts(2, 2 * per_line);
  for (int i = 0; i < 2 * per_line; ++i) {
    const double t = g.uniform(-1.0, 1.0);
    const bool second = i >= per_line;
    pts(0, i) = (second ? 0.0 : t) + noise * g.uniform(-1.0, 1.0);
    pts(1, i) = (second ? t : 0.0) + noise * g.uniform(-1.0, 1.0);
    if (truth) truth->push_back(second ? 1 : 0);
  }
  return pts;
}

}  // namespace

TEST_CASE("affinities of collinear tuples are one") {
  Matrix pts(2, 5);
  pts << 0, 1, 2, 3, 4, 0, 1, 2, 3, 4;
  const auto w = scc_affinities(pts, 1, 0.7, 10, 1);
  CHECK(w.sampled_tuples == 50);
  // Each tuple has affinity 1 and contributes to three pairs.
  CHECK(w.weights.sum() == doctest::Approx(50.0 * 3 * 2));
  CHECK((w.weights - w.weights.transpose()).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("large sigma drives affinities to one") {
  Gen g(81);
  const Matrix pts = g.points(2, 8);
  const auto w = scc_affinities(pts, 1, 1e8, 20, 2);
  CHECK(w.weights.sum() == doctest::Approx(8.0 * 20 * 3 * 2).epsilon(1e-9));
  CHECK(w.weights.minCoeff() >= 0.0);
}

TEST_CASE("affinity argument checks") {
  CHECK_THROWS_AS(scc_affinities(Matrix::Zero(2, 2), 1, 1.0, 10, 0), Error);
  CHECK_THROWS_AS(scc_affinities(Matrix::Zero(2, 5), 1, -1.0, 10, 0), Error);
  CHECK_THROWS_AS(scc_affinities(Matrix::Zero(2, 5), 1, 1.0, 0, 0), Error);
}

TEST_CASE("within-line affinity exceeds cross-line affinity") {
  Gen g(82);
  std::vector<int> truth;
  const Matrix pts = two_lines(g, 50, 0.02, &truth);
  const auto w = scc_affinities(pts, 1, std::nullopt, 100, 5);
  CHECK(w.sigma > 0.0);
  double within = 0.0, cross = 0.0;
  int nw = 0, nc = 0;
  for (int i = 0; i < 100; ++i)
    for (int j = 0; j < 100; ++j) {
      if (i == j) continue;
      if (truth[static_cast<std::size_t>(i)] == truth[static_cast<std::size_t>(j)]) {
        within += w.weights(i, j);
        ++nw;
      } else {
        cross += w.weights(i, j);
        ++nc;
      }
    }
  CHECK(within / nw > cross / nc);
}

TEST_CASE("spectral clustering") {
  AffinityMatrix block;
  block.weights = Matrix::Zero(6, 6);
  block.weights.topLeftCorner(3, 3).setOnes();
  block.weights.bottomRightCorner(3, 3).setOnes();
  const auto c = spectral_cluster(block, 2);
  CHECK(clustering_accuracy(c.labels, {0, 0, 0, 1, 1, 1}, 2) == 1.0);
  CHECK(c.warning.empty());

  const auto one = spectral_cluster(block, 1);
  for (const int l : one.labels) CHECK(l == 0);

  AffinityMatrix zero;
  zero.weights = Matrix::Zero(4, 4);
  const auto z = spectral_cluster(zero, 2);
  for (const int l : z.labels) CHECK(l == 0);
  CHECK_FALSE(z.warning.empty());
  CHECK_THROWS_AS(spectral_cluster(block, 0), Error);

  Gen g(83);
  std::vector<int> truth;
  const Matrix pts = two_lines(g, 50, 0.02, &truth);
  const auto labels = spectral_cluster(scc_affinities(pts, 1, std::nullopt, 100, 9), 2, 9);
  CHECK(clustering_accuracy(labels.labels, truth, 2) >= 0.95);
}

TEST_CASE("clustering accuracy is permutation invariant") {
  CHECK(clustering_accuracy({1, 1, 0}, {0, 0, 1}, 2) == 1.0);
  CHECK(clustering_accuracy({0, 1, 0, 1}, {0, 0, 1, 1}, 2) == 0.5);
  CHECK_THROWS_AS(clustering_accuracy({0}, {0, 1}, 2), Error);
}

TEST_CASE("volume sampling") {
  const auto mu = testing::t3();
  CHECK(volume_sampling_expected_error(mu, 1) == doctest::Approx(1.0 / 6));
  CHECK(volume_sampling_expected_error(testing::sq4(), 1) == doctest::Approx(0.5));

  // T3: each atom gives M_1(x_cm, x)^2 in {5/9, 5/9, 2/9}: the draw
  // probability is weight * M^2 / volume_moment.
  const auto s = volume_sample_flat(mu, 1, 42);
  REQUIRE(s.atoms.size() == 1);
  const double m2 = (mu.atom(s.atoms[0]) - center_of_mass(mu)).squaredNorm();
  CHECK(s.probability == doctest::Approx(m2 / 3 / (4.0 / 9)));
  const auto again = volume_sample_flat(mu, 1, 42);
  CHECK(again.atoms == s.atoms);
  CHECK(again.flat.basis() == s.flat.basis());

  // Empirical draw frequencies follow the probabilities.
  std::vector<int> hits(3, 0);
  const int draws = 3000;
  for (int k = 0; k < draws; ++k) ++hits[static_cast<std::size_t>(volume_sample_flat(mu, 1, k).atoms[0])];
  CHECK(hits[0] / double(draws) == doctest::Approx(2.0 / 12).epsilon(0.25));
  CHECK(hits[1] / double(draws) == doctest::Approx(5.0 / 12).epsilon(0.1));

  // d = 2: the six ordered pairs of distinct atoms each carry 1/6.
  for (int k = 0; k < 10; ++k) {
    const auto pair = volume_sample_flat(mu, 2, k);
    CHECK(pair.atoms[0] != pair.atoms[1]);
    CHECK(pair.probability == doctest::Approx(1.0 / 6));
  }

  // Two-point measure: only one nondegenerate family.
  Matrix two(2, 2);
  two << 0, 2, 0, 0;
  const auto seg = DiscreteMeasure::uniform(two);
  for (int k = 0; k < 5; ++k) {
    const auto f = volume_sample_flat(seg, 1, k);
    CHECK(std::abs(f.flat.basis()(1, 0)) <= 1e-12);
  }
  CHECK(volume_sampling_expected_error(seg, 1) == doctest::Approx(0.0).epsilon(1e-12));

  Matrix one(2, 1);
  one << 1, 1;
  CHECK_THROWS_AS(volume_sample_flat(DiscreteMeasure::uniform(one), 1, 0), Error);
}

TEST_CASE("volume sampling equals the c_dsh integral on random measures") {
  Gen g(84);
  for (int trial = 0; trial < 100; ++trial) {
    const int d = g.integer(1, 2);
    const auto mu = g.measure(g.integer(d, 4), g.integer(d + 1, 6));
    if (volume_moment(mu, d) <= 1e-10) continue;
    const double v = volume_sampling_expected_error(mu, d);
    CHECK(testing::rel_close(v, c_dsh_integral(mu, d), 1e-10, 1e-15));
    CHECK(v <= (d + 1) * std::pow(ls_flat(mu, d).e2, 2) * (1 + 1e-9) + 1e-15);
  }
}
