#include "doctest.h"

#include <cmath>

#include "orlicz/gauge.hpp"

using namespace orlicz;

TEST_CASE("sublevel set of the quadratic is the expected disc") {
  GaugeSet K(PhiFunction::power(2, 2.0), 1.0, 4.0);
  CHECK(K.gauge({1.0, 0.0}) == doctest::Approx(0.5).epsilon(1e-9));
  CHECK(K.gauge({0.0, 3.0}) == doctest::Approx(1.5).epsilon(1e-9));
  CHECK(K.contains({1.9, 0.0}));
  CHECK(!K.contains({2.1, 0.0}));
  CHECK(K.bounding_radius() >= 2.0 - 1e-6);
  CHECK(K.inradius() <= 2.0 + 1e-6);
  CHECK(K.convex_certified());
}

TEST_CASE("beta rescales the sublevel set") {
  GaugeSet K(PhiFunction::power(2, 2.0), 0.5, 4.0);  // phi(xi/2) <= 4: radius 4
  CHECK(K.gauge({1.0, 0.0}) == doctest::Approx(0.25).epsilon(1e-9));
  CHECK(K.contains({3.9, 0.1}));
}

TEST_CASE("indicator sublevel sets are the l1 ball at every level") {
  GaugeSet K(PhiFunction::linf_indicator(2, 1.0), 1.0, 7.0);
  CHECK(K.gauge({0.5, 0.5}) == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(K.gauge({2.0, 0.0}) == doctest::Approx(2.0).epsilon(1e-9));
  CHECK(K.gauge({0.25, 0.25}) == doctest::Approx(0.5).epsilon(1e-9));
}

TEST_CASE("gauge is positively homogeneous") {
  GaugeSet K(PhiFunction::diag_quadratic({1.0, 4.0}), 1.0, 4.0);
  Vec xi{0.7, -0.4};
  double g = K.gauge(xi);
  for (double lam : {0.1, 0.37, 2.5, 9.9}) {
    double gl = K.gauge({lam * xi[0], lam * xi[1]});
    CHECK(std::abs(gl - lam * g) <= 1e-7 * std::max(1.0, lam * g));
  }
}

TEST_CASE("unbounded sublevel sets are rejected") {
  // phi depends on xi_1 only, so the sublevel set is an unbounded strip
  PhiFunction strip = PhiFunction::from_callable(
      2, [](const Vec& xi) { return ExtReal(xi[0] * xi[0]); }, true, "strip");
  CHECK_THROWS_AS(GaugeSet(strip, 1.0, 4.0), std::runtime_error);
}

TEST_CASE("minorant pair: phi below the level, gauge norm above it") {
  MinorantPair mp = build_minorant_pair(PhiFunction::power(2, 2.0), 1.0, 4.0);
  // inside K the norm part is the constant s, so the min is phi
  CHECK(mp.minorant({1.0, 0.0}).value() == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(mp.gauge_norm({0.5, 0.0}).value() == doctest::Approx(4.0).epsilon(1e-9));
  CHECK(mp.gauge_norm({0.0, 0.0}).value() == doctest::Approx(4.0).epsilon(1e-9));
  // outside K the norm takes over: s * |xi| / 2 beats phi = |xi|^2
  CHECK(mp.minorant({4.0, 0.0}).value() == doctest::Approx(8.0).epsilon(1e-8));
  CHECK(mp.minorant({0.0, 0.0}).value() == 0.0);
  // sandwich: the minorant never exceeds phi
  for (double t : {0.3, 1.0, 2.0, 5.0, 11.0}) {
    Vec xi{t, t / 3};
    CHECK(mp.minorant(xi).value() <=
          PhiFunction::power(2, 2.0)(xi).value() + 1e-9);
  }
}
