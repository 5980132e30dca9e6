#include "doctest.h"

#include <cmath>

#include "orlicz/errors.hpp"
#include "orlicz/field.hpp"
#include "orlicz/oracle.hpp"
#include "orlicz/spatial.hpp"

using namespace orlicz;

namespace {

Box unit_box() { return Box{{-1.0, -1.0}, {1.0, 1.0}}; }

SpatialPhiFunction plain_power() {
  return SpatialPhiFunction::constant(unit_box(), PhiFunction::power(2, 2.0));
}

SpatialPhiFunction weighted_dp(double A = 1.0) {
  SpatialPhiFunction::DoublePhaseSpec spec;
  spec.p = 2;
  spec.q_hi = 3;
  spec.holder_const = A;
  spec.x0 = {0.0, 0.0};
  return SpatialPhiFunction::double_phase(unit_box(), 2, spec);
}

}  // namespace

TEST_CASE("box geometry") {
  Box b = unit_box();
  CHECK(b.volume() == doctest::Approx(4.0).epsilon(1e-12));
  CHECK(b.center() == Vec{0.0, 0.0});
  CHECK(b.contains({0.5, -0.5}));
  CHECK(!b.contains({1.5, 0.0}));
}

TEST_CASE("ball measure: exact inside, sampled when clipped") {
  auto phi = plain_power();
  CHECK(ball_volume(2, 0.5) == doctest::Approx(0.25 * std::acos(-1.0)).epsilon(1e-12));
  Ball inside{{0.2, 0.1}, 0.5};
  CHECK(phi.measure(inside) ==
        doctest::Approx(std::acos(-1.0) * 0.25).epsilon(1e-12));

  Ball clipped{{1.0, 0.0}, 0.5};  // half the disc sticks out
  double mu = phi.measure(clipped);
  CHECK(mu == doctest::Approx(0.5 * std::acos(-1.0) * 0.25).epsilon(0.02));
  CHECK(mu == phi.measure(clipped));  // deterministic

  CHECK_THROWS_AS(phi.measure(Ball{{0.0, 0.0}, -1.0}), ConfigError);
}

TEST_CASE("weighted double phase evaluates a(x) = a0 + A|x - x0|^alpha") {
  auto phi = weighted_dp();
  Vec x{0.5, 0.0}, xi{1.0, 1.0};
  double r2 = 2.0;  // |xi|^2
  double expect = r2 + 0.5 * std::pow(r2, 1.5 / 1.0) * std::pow(r2, 0.0);
  expect = r2 + 0.5 * std::sqrt(8.0);  // |xi|^3 = 2^{3/2}
  CHECK(phi.eval(x, xi).value() == doctest::Approx(expect).epsilon(1e-12));
  CHECK(!phi.x_independent());
  CHECK(phi.eval({0.0, 0.0}, xi).value() == doctest::Approx(r2).epsilon(1e-12));

  SpatialPhiFunction::DoublePhaseSpec dir;
  dir.p = 2;
  dir.q_hi = 3;
  dir.directional = true;
  dir.x0 = {0.0, 0.0};
  auto phid = SpatialPhiFunction::double_phase(unit_box(), 2, dir);
  CHECK(phid.eval(x, xi).value() == doctest::Approx(2.0 + 0.5).epsilon(1e-12));
}

TEST_CASE("variable exponent power") {
  auto phi = SpatialPhiFunction::variable_power(unit_box(), 2, 2.0, {1.0, 0.0});
  // p(x) = 2 + (x - center) . (1, 0)
  CHECK(phi.eval({0.5, 0.0}, {2.0, 0.0}).value() ==
        doctest::Approx(std::pow(2.0, 2.5)).epsilon(1e-12));
  CHECK(phi.eval({0.0, 0.7}, {2.0, 0.0}).value() == doctest::Approx(4.0).epsilon(1e-12));
}

TEST_CASE("freeze pins the spatial slot") {
  auto phi = weighted_dp();
  Vec x{0.3, -0.4};
  PhiFunction frozen = phi.freeze(x);
  for (double t : {0.5, 1.0, 2.5}) {
    Vec xi{t, -t / 2};
    CHECK(frozen(xi).value() == doctest::Approx(phi.eval(x, xi).value()).epsilon(1e-12));
  }
}

TEST_CASE("ball envelopes bracket pointwise values") {
  auto phi = weighted_dp();
  Ball b{{0.5, 0.0}, 0.1};
  SamplerSpec spec;
  spec.count = 256;
  PhiFunction lo = phi.ball_inf(b, spec);
  PhiFunction hi = phi.ball_sup(b, spec);
  Vec xi{1.0, 0.0};
  double at_center = phi.eval(b.center, xi).value();
  CHECK(lo(xi).value() <= at_center + 1e-12);
  CHECK(hi(xi).value() >= at_center - 1e-12);
  // a(x) = |x| ranges over [0.4, 0.6] on the ball
  CHECK(lo(xi).value() >= 1.4 - 1e-9);
  CHECK(lo(xi).value() <= 1.43);
  CHECK(hi(xi).value() <= 1.6 + 1e-9);
  CHECK(hi(xi).value() >= 1.57);
}

TEST_CASE("halton ball samples are deterministic with the prefix property") {
  auto phi = plain_power();
  Ball b{{0.2, -0.3}, 0.4};
  SamplerSpec s32, s64;
  s32.count = 32;
  s64.count = 64;
  auto a = phi.ball_samples(b, s32);
  auto bb = phi.ball_samples(b, s64);
  REQUIRE(a.size() <= bb.size());
  for (size_t i = 0; i < a.size(); ++i) CHECK(a[i] == bb[i]);
  for (const auto& x : a) {
    double d = std::hypot(x[0] - b.center[0], x[1] - b.center[1]);
    CHECK(d <= b.radius + 1e-12);
  }
  CHECK(a == phi.ball_samples(b, s32));
}

TEST_CASE("constant field: weights, average, modular") {
  auto phi = plain_power();
  Ball b{{0.0, 0.0}, 0.5};
  SamplerSpec spec;
  spec.count = 64;
  VectorField v = VectorField::constant_on_ball(phi, b, {0.5, 0.0}, spec);
  double mu = phi.measure(b);
  CHECK(v.total_weight() == doctest::Approx(mu).epsilon(1e-12));
  CHECK(v.average()[0] == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(v.average()[1] == doctest::Approx(0.0).epsilon(1e-12));
  // x-independent quadratic: rho = mu * |v|^2
  CHECK(modular(phi, v).value() == doctest::Approx(mu * 0.25).epsilon(1e-9));
  CHECK(modular(phi, v.scaled_by(2.0)).value() ==
        doctest::Approx(mu * 1.0).epsilon(1e-9));
}

TEST_CASE("luxemburg norm of a constant field on a unit-measure ball") {
  // mu(B) = pi r^2 = 1 at r = pi^{-1/2}; for phi = |xi|^2 the norm of
  // f = 2 e_1 is exactly 2.
  auto phi = plain_power();
  double r = 1.0 / std::sqrt(std::acos(-1.0));
  Ball b{{0.0, 0.0}, r};
  SamplerSpec spec;
  spec.count = 64;
  VectorField v = VectorField::constant_on_ball(phi, b, {2.0, 0.0}, spec);
  NormResult nr = luxemburg_norm(phi, v);
  CHECK(nr.status == NormResult::Status::Finite);
  CHECK(nr.value == doctest::Approx(2.0).epsilon(1e-6));
  CHECK(nr.iterations > 0);
  // certified side: the returned lambda really has modular <= 1
  CHECK(modular(phi, v.scaled_by(1.0 / nr.value)).value() <= 1.0 + 1e-8);
}

TEST_CASE("luxemburg norm handles infinities and the zero field") {
  auto phi = plain_power();
  Ball b{{0.0, 0.0}, 0.3};
  SamplerSpec spec;
  spec.count = 32;
  VectorField zero = VectorField::constant_on_ball(phi, b, {0.0, 0.0}, spec);
  NormResult z = luxemburg_norm(phi, zero);
  CHECK(z.status == NormResult::Status::Finite);
  CHECK(z.value == 0.0);
  CHECK(z.note == "zero field");

  // indicator integrand: modular jumps 0 <-> positive at the l^1 gauge
  auto ind = SpatialPhiFunction::constant(unit_box(), PhiFunction::linf_indicator(2, 1.0));
  VectorField w = VectorField::constant_on_ball(ind, b, {3.0, 0.0}, spec);
  NormResult nw = luxemburg_norm(ind, w);
  CHECK(nw.status == NormResult::Status::Finite);
  CHECK(nw.value == doctest::Approx(3.0).epsilon(1e-6));
}

TEST_CASE("dense scan agrees with bisection to one grid step") {
  auto phi = plain_power();
  double r = 1.0 / std::sqrt(std::acos(-1.0));
  Ball b{{0.0, 0.0}, r};
  SamplerSpec spec;
  spec.count = 64;
  VectorField v = VectorField::constant_on_ball(phi, b, {2.0, 0.0}, spec);
  NormResult nr = luxemburg_norm(phi, v);

  std::vector<double> lambdas;
  double step = 0.002;
  for (int k = 1; k <= 2000; ++k) lambdas.push_back(step * k);
  ScanResult sr = norm_dense_scan(phi, v, lambdas);
  REQUIRE(sr.found);
  CHECK(std::abs(sr.lambda - nr.value) <= step + 1e-12);
  CHECK(sr.modular_at <= 1.0 + 1e-12);
}
