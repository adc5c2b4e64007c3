#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "cogsense/errors.hpp"
#include "cogsense/robust.hpp"
#include "oracles.hpp"

using namespace cogsense;

TEST_CASE("mean difference: frozen examples") {
  CHECK(mean_difference(std::vector<double>{5, 5, 5}) == 0.0);
  // |0-0|+|0-2|+|2-0|+|2-2| = 4, divided by N^2 = 4
  CHECK(mean_difference(std::vector<double>{0, 2}) == 1.0);
  const std::vector<double> s{1, 2, 4};
  CHECK(mean_difference(s) == doctest::Approx(4.0 / 3.0).epsilon(1e-15));
  CHECK(oracle::within_ulps(mean_difference(s), oracle::mean_difference(s), 4));
  CHECK_THROWS_AS(mean_difference(std::vector<double>{}), InvalidInput);
}

TEST_CASE("mad: frozen examples") {
  CHECK(mad(std::vector<double>{3.5, 3.5, 3.5, 3.5}) == 0.0);
  CHECK(mad(std::vector<double>{1, 2, 3, 4, 5}) == 1.0);
  // One extreme value barely registers: deviations sorted {0,1,1,2,97}.
  CHECK(mad(std::vector<double>{1, 2, 3, 4, 100}) == 1.0);
  CHECK_THROWS_AS(mad(std::vector<double>{}), InvalidInput);
}

TEST_CASE("sn estimator: frozen examples") {
  CHECK(sn_estimator(std::vector<double>{7, 7, 7}) == 0.0);
  // inner medians {1.5, 1, 1.5}; outer median 1.5
  CHECK(sn_estimator(std::vector<double>{1, 2, 3}) == 1.192 * 1.5);
  // inner medians {2, 1, 2, 98}; outer median 2
  CHECK(sn_estimator(std::vector<double>{1, 2, 3, 100}) == 1.192 * 2.0);
  CHECK_THROWS_AS(sn_estimator(std::vector<double>{1}), InvalidInput);
}

TEST_CASE("qn estimator: frozen examples") {
  CHECK(qn_estimator(std::vector<double>{4, 4}) == 0.0);
  // distances {1, 1, 2}; interpolated first quartile 1
  CHECK(qn_estimator(std::vector<double>{0, 1, 2}) == 2.2);
  // distances sorted {1,1,1,2,2,3}; interpolated first quartile 1
  CHECK(qn_estimator(std::vector<double>{0, 1, 2, 3}) == 2.2);
  CHECK_THROWS_AS(qn_estimator(std::vector<double>{1}), InvalidInput);
}

TEST_CASE("quartiles: frozen examples") {
  const auto q3 = quartiles(std::vector<double>{1, 2, 3});
  CHECK(q3.q1 == 1.5);
  CHECK(q3.q3 == 2.5);
  const auto q0 = quartiles(std::vector<double>{0, 0, 0, 0});
  CHECK(q0.q1 == 0.0);
  CHECK(q0.q3 == 0.0);
  const auto q5 = quartiles(std::vector<double>{1, 2, 3, 4, 5});
  CHECK(q5.q1 == 2.0);
  CHECK(q5.q3 == 4.0);
  CHECK_THROWS_AS(quartiles(std::vector<double>{1}), InvalidInput);
}

TEST_CASE("quantile convention on a sorted range") {
  const std::vector<double> x{1, 2, 3, 4};
  CHECK(quantile_sorted(x, 0.0) == 1.0);
  CHECK(quantile_sorted(x, 0.25) == 1.75);
  CHECK(quantile_sorted(x, 0.5) == 2.5);
  CHECK(quantile_sorted(x, 1.0) == 4.0);
}

TEST_CASE("medcouple: frozen examples and errors") {
  CHECK(medcouple(std::vector<double>{1, 2, 3}) == 0.0);
  // single straddling pair (1,10): ((10-2)-(2-1))/9
  CHECK(medcouple(std::vector<double>{1, 2, 10}) == 7.0 / 9.0);
  CHECK(medcouple(std::vector<double>{-10, -2, -1}) == -7.0 / 9.0);
  CHECK_THROWS_AS(medcouple(std::vector<double>{1, 2}), InvalidInput);
  CHECK_THROWS_AS(medcouple(std::vector<double>{5, 5, 5}), DegenerateSample);
  // more than half the values sit on the median: no straddling pair
  CHECK_THROWS_AS(medcouple(std::vector<double>{1, 5, 5}), DegenerateSample);
  CHECK_THROWS_AS(medcouple(std::vector<double>{5, 5, 9}), DegenerateSample);
}

TEST_CASE("non-finite values are rejected") {
  const double nan = std::numeric_limits<double>::quiet_NaN();
  const double inf = std::numeric_limits<double>::infinity();
  CHECK_THROWS_AS(mad(std::vector<double>{1, nan, 3}), InvalidInput);
  CHECK_THROWS_AS(mean_difference(std::vector<double>{inf, 1}), InvalidInput);
  CHECK_THROWS_AS(sn_estimator(std::vector<double>{1, -inf}), InvalidInput);
  CHECK_THROWS_AS(qn_estimator(std::vector<double>{nan, nan}), InvalidInput);
  CHECK_THROWS_AS(medcouple(std::vector<double>{1, nan, 3}), InvalidInput);
}

TEST_CASE("adjusted fences: exponential factors and frozen example") {
  // symmetric sample: mc = 0, classical 1.5 IQR boxplot
  const std::vector<double> sym{1, 2, 3, 4, 5};
  const MedcoupleFences f = adjusted_fences(sym);
  CHECK(f.mc == 0.0);
  CHECK(f.h_l == 1.5);
  CHECK(f.h_r == 1.5);
  CHECK(f.lower_fence == f.q1 - 1.5 * f.iqr);
  CHECK(f.upper_fence == f.q3 + 1.5 * f.iqr);

  // hypothetical mc fed straight into the factor formulas
  const FenceFactors ff = fence_factors(0.2);
  CHECK(ff.h_l == doctest::Approx(0.7448).epsilon(1e-4));
  CHECK(ff.h_r == doctest::Approx(3.3383).epsilon(1e-4));
  CHECK(ff.h_l == 1.5 * std::exp(-3.5 * 0.2));
  CHECK(ff.h_r == 1.5 * std::exp(4.0 * 0.2));

  const MedcoupleFences g = adjusted_fences(std::vector<double>{1, 2, 10});
  CHECK(g.mc == 7.0 / 9.0);
  CHECK(g.q1 == 1.5);
  CHECK(g.q3 == 6.0);
  CHECK(g.iqr == 4.5);
  CHECK(g.h_l == doctest::Approx(0.0985).epsilon(1e-3));
  CHECK(g.h_r == doctest::Approx(33.671).epsilon(1e-3));
  CHECK(g.lower_fence == doctest::Approx(1.0567).epsilon(1e-3));
  CHECK(g.upper_fence == doctest::Approx(157.52).epsilon(1e-3));
  CHECK(g.lower_fence <= g.upper_fence);

  CHECK_THROWS_AS(adjusted_fences(std::vector<double>{5, 5, 5}),
                  DegenerateSample);
}

TEST_CASE("oracle equivalence on random mixed samples") {
  std::mt19937_64 rng(0xC0FFEE);
  std::uniform_int_distribution<std::size_t> size_dist(3, 60);
  const oracle::SampleKind kinds[] = {oracle::SampleKind::kGaussian,
                                      oracle::SampleKind::kLognormal,
                                      oracle::SampleKind::kContaminated};
  for (int rep = 0; rep < 200; ++rep) {
    const auto kind = kinds[rep % 3];
    const std::vector<double> x =
        oracle::random_sample(rng, kind, size_dist(rng));
    CAPTURE(rep);
    CHECK(oracle::within_ulps(mean_difference(x), oracle::mean_difference(x), 4));
    CHECK(oracle::within_ulps(mad(x), oracle::mad(x), 4));
    CHECK(oracle::within_ulps(sn_estimator(x), oracle::sn(x), 4));
    CHECK(oracle::within_ulps(qn_estimator(x), oracle::qn(x), 4));
    CHECK(oracle::within_ulps(medcouple(x), oracle::medcouple(x), 4));
  }
}

namespace {

double run_estimator(int which, const std::vector<double>& x) {
  switch (which) {
    case 0:
      return mean_difference(x);
    case 1:
      return mad(x);
    case 2:
      return sn_estimator(x);
    default:
      return qn_estimator(x);
  }
}

// Absolute slack a mathematically shift-invariant estimator can accrue from
// rounding x + c: each shifted value is off by at most half an ulp of its
// own magnitude, so estimator values built from their differences move by at
// most a few ulps of (|c| + max|x|).
double shift_slack(double c, const std::vector<double>& x) {
  double maxabs = 0.0;
  for (double v : x) {
    maxabs = std::max(maxabs, std::fabs(v));
  }
  return 4.0 * std::numeric_limits<double>::epsilon() * (std::fabs(c) + maxabs);
}

}  // namespace

TEST_CASE("location invariance of the four scale estimators") {
  std::mt19937_64 rng(99);
  for (int rep = 0; rep < 100; ++rep) {
    const std::vector<double> x =
        oracle::random_sample(rng, oracle::SampleKind::kGaussian, 40);
    for (double c : {-3.0, 0.7, 2.5}) {
      std::vector<double> shifted = x;
      for (double& v : shifted) {
        v += c;
      }
      for (int which = 0; which < 4; ++which) {
        const double base = run_estimator(which, x);
        const double moved = run_estimator(which, shifted);
        const bool ok = oracle::within_ulps(base, moved, 8) ||
                        std::fabs(base - moved) <= shift_slack(c, x);
        CAPTURE(rep);
        CAPTURE(which);
        CAPTURE(c);
        CHECK(ok);
      }
    }
  }
}

TEST_CASE("scale equivariance of the four scale estimators") {
  std::mt19937_64 rng(123);
  for (int rep = 0; rep < 100; ++rep) {
    const std::vector<double> x =
        oracle::random_sample(rng, oracle::SampleKind::kLognormal, 30);
    for (double a : {0.125, 1024.0, 3.7, -2.25}) {
      std::vector<double> scaled = x;
      for (double& v : scaled) {
        v *= a;
      }
      for (int which = 0; which < 4; ++which) {
        const double expect = std::fabs(a) * run_estimator(which, x);
        const double got = run_estimator(which, scaled);
        CAPTURE(rep);
        CAPTURE(which);
        CAPTURE(a);
        if (a == 0.125 || a == 1024.0) {
          CHECK(got == expect);  // power-of-two scaling commutes exactly
        } else if (which == 0) {
          // MD accumulates n^2 terms, so rescaling legitimately drifts the
          // partial-sum roundings by up to ~n^2 ulps; the median-based
          // estimators select single elements and stay within a few ulps.
          const double n2 = static_cast<double>(x.size() * x.size());
          const double slack =
              2.0 * n2 * std::numeric_limits<double>::epsilon() * expect;
          CHECK(std::fabs(got - expect) <= slack);
        } else {
          CHECK(oracle::within_ulps(got, expect, 8));
        }
      }
    }
  }
}

TEST_CASE("zero on constant samples, exactly") {
  const std::vector<double> x(17, 0.8414709848078965);
  CHECK(mean_difference(x) == 0.0);
  CHECK(mad(x) == 0.0);
  CHECK(sn_estimator(x) == 0.0);
  CHECK(qn_estimator(x) == 0.0);
}

TEST_CASE("medcouple range, antisymmetry and affine invariance") {
  std::mt19937_64 rng(31337);
  for (int rep = 0; rep < 200; ++rep) {
    const auto kind = rep % 2 == 0 ? oracle::SampleKind::kLognormal
                                   : oracle::SampleKind::kContaminated;
    const std::vector<double> x = oracle::random_sample(rng, kind, 25);
    const double mc = medcouple(x);
    CHECK(mc >= -1.0);
    CHECK(mc <= 1.0);

    std::vector<double> negated = x;
    for (double& v : negated) {
      v = -v;
    }
    CHECK(medcouple(negated) == -mc);

    std::vector<double> affine = x;
    for (double& v : affine) {
      v = 2.5 * v + 0.3;
    }
    CHECK(medcouple(affine) == doctest::Approx(mc).epsilon(1e-9));
    std::vector<double> flipped = x;
    for (double& v : flipped) {
      v = -1.5 * v + 0.2;
    }
    CHECK(medcouple(flipped) == doctest::Approx(-mc).epsilon(1e-9));
  }
}

TEST_CASE("breakdown: 10 of 50 wild values stay bounded except for MD") {
  std::mt19937_64 rng(777);
  std::uniform_real_distribution<double> wild(1e8, 5e8);
  for (int rep = 0; rep < 50; ++rep) {
    const std::vector<double> clean =
        oracle::random_sample(rng, oracle::SampleKind::kGaussian, 50);
    std::vector<double> dirty = clean;
    std::vector<int> order(50);
    for (int i = 0; i < 50; ++i) {
      order[i] = i;
    }
    std::shuffle(order.begin(), order.end(), rng);
    std::vector<double> survivors;
    for (int i = 10; i < 50; ++i) {
      survivors.push_back(clean[order[i]]);
    }
    for (int i = 0; i < 10; ++i) {
      dirty[order[i]] = wild(rng);
    }
    double max_pair = 0.0;
    for (std::size_t i = 0; i < survivors.size(); ++i) {
      for (std::size_t j = i + 1; j < survivors.size(); ++j) {
        max_pair = std::max(max_pair, std::fabs(survivors[i] - survivors[j]));
      }
    }
    // All the constants in play are <= 2.2, so the clean pairwise range
    // scaled by 2.2 bounds MAD, Sn and Qn under 20% contamination.
    CHECK(mad(dirty) <= 2.2 * max_pair);
    CHECK(sn_estimator(dirty) <= 2.2 * max_pair);
    CHECK(qn_estimator(dirty) <= 2.2 * max_pair);
    CHECK(mean_difference(dirty) > 1e6);  // dragged away by design
  }
}

TEST_CASE("gaussian consistency of the scale estimates (mini)") {
  std::mt19937_64 rng(2024);
  std::normal_distribution<double> normal(0.0, 1.0);
  for (int seed = 0; seed < 10; ++seed) {
    std::vector<double> x(3000);
    for (double& v : x) {
      v = normal(rng);
    }
    CHECK(kMadToSigma * mad(x) == doctest::Approx(1.0).epsilon(0.1));
    CHECK(sn_estimator(x) == doctest::Approx(1.0).epsilon(0.1));
    CHECK(qn_estimator(x) == doctest::Approx(1.0).epsilon(0.1));
    CHECK(kMeanDiffToSigma * mean_difference(x) ==
          doctest::Approx(1.0).epsilon(0.1));
  }
}

TEST_CASE("median conventions") {
  CHECK(median(std::vector<double>{3, 1, 2}) == 2.0);
  CHECK(median(std::vector<double>{4, 1, 3, 2}) == 2.5);
  CHECK_THROWS_AS(median(std::vector<double>{}), InvalidInput);
}
