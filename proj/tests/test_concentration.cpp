#include <doctest.h>

#include "gcnlab/concentration.hpp"
#include "gcnlab/error.hpp"
#include "support.hpp"

using namespace gcnlab;

TEST_CASE("concentration on the three-point triangle") {
  ConcentrationParams p;
  p.d = 1;
  p.sample_size = 60;
  p.trials = 80;
  p.delta = 0.5;
  p.seed = 3;
  const auto s = concentration_experiment(testing::t3(), p);
  CHECK(s.left_holds == s.trials);
  CHECK(s.integral_c_dls_sq == doctest::Approx(2.0 / 81));
  CHECK(s.e2_squared == doctest::Approx(1.0 / 9));
  const double kappa = 0.5 / (3.0 * 2.0) * (2.0 / 81);
  CHECK(s.kappa == doctest::Approx(kappa));
  CHECK(s.floor_delta == doctest::Approx(1.0 - 2.0 * std::exp(-2.0 * 60 * kappa * kappa)));
  CHECK(s.sandwich_delta_frequency() >= s.floor_delta);
  CHECK(s.sandwich_sep_frequency() >= s.floor_sep);
  CHECK(s.delta_sep == doctest::Approx(1.0 / 6));  // delta >= epsilon = 1/3

  const auto again = concentration_experiment(testing::t3(), p);
  CHECK(again.mean_empirical_e2_sq == s.mean_empirical_e2_sq);
  CHECK(again.sandwich_delta_holds == s.sandwich_delta_holds);
}

TEST_CASE("concentration parameter checks") {
  ConcentrationParams p;
  p.trials = 0;
  CHECK_THROWS_AS(concentration_experiment(testing::t3(), p), Error);
  p.trials = 5;
  p.delta = 1.0;
  CHECK_THROWS_AS(concentration_experiment(testing::t3(), p), Error);
  p.delta = 0.5;
  p.delta_sep = 0.5;
  CHECK_THROWS_AS(concentration_experiment(testing::t3(), p), Error);
  p.delta_sep.reset();
  p.d = 2;
  Matrix line(2, 3);
  line << 0, 1, 2, 0, 0, 0;
  CHECK_THROWS_AS(concentration_experiment(DiscreteMeasure::uniform(line), p), Error);
}

TEST_CASE("empirical c_dls average equals the sum over all sample index tuples") {
  // A sample of size 4 with a repeated point: the merged empirical measure
  // must reproduce the raw N^{d+2} tuple average.
  Matrix sample(2, 4);
  sample << 0, 1, 0, 1, 0, 0, 1, 0;
  IntegralSpec spec;
  spec.kind = GcnKind::dls;
  spec.d = 1;
  const double merged = integral_exact(DiscreteMeasure::empirical(sample), spec);
  const double raw = integral_exact(DiscreteMeasure::uniform(sample), spec);
  CHECK(merged == doctest::Approx(raw));
}
