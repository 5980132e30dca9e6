#include "doctest.h"

#include <algorithm>
#include <cmath>

#include "orlicz/conditions.hpp"
#include "orlicz/envelope.hpp"
#include "orlicz/gauge.hpp"
#include "orlicz/oracle.hpp"
#include "orlicz/rng.hpp"

using namespace orlicz;

namespace {

Box unit_box() { return Box{{-1.0, -1.0}, {1.0, 1.0}}; }

PhiFunction min_quad() {
  return PhiFunction::min_of({PhiFunction::diag_quadratic({1.0, 0.0}),
                              PhiFunction::diag_quadratic({0.0, 1.0})});
}

GridFunction sample_product(const PhiFunction& phi, double radius, int count) {
  std::vector<std::vector<double>> axes(phi.dim(), GridFunction::symmetric_axis(radius, count));
  return GridFunction::product(axes, [&](const Vec& xi) { return phi(xi); });
}

SpatialPhiFunction weighted_dp() {
  SpatialPhiFunction::DoublePhaseSpec spec;
  spec.p = 2;
  spec.q_hi = 3;
  spec.holder_const = 1;
  spec.x0 = {0.0, 0.0};
  return SpatialPhiFunction::double_phase(unit_box(), 2, spec);
}

}  // namespace

TEST_CASE("property: gauge homogeneity under random scalings") {
  GaugeSet K(PhiFunction::diag_quadratic({1.0, 4.0}), 1.0, 4.0);
  Rng rng(7);
  for (int it = 0; it < 200; ++it) {
    Vec xi = rng.on_sphere(2);
    double r = rng.uniform(0.3, 3.0);
    xi = {r * xi[0], r * xi[1]};
    double lam = rng.uniform(0.1, 10.0);
    double g = K.gauge(xi);
    double gl = K.gauge({lam * xi[0], lam * xi[1]});
    CHECK(std::abs(gl - lam * g) <= 1e-7 * std::max(1.0, lam * g));
  }
}

TEST_CASE("property: the envelope is idempotent") {
  for (const PhiFunction& phi :
       {min_quad(), PhiFunction::power(2, 2.0), PhiFunction::diag_quadratic({1.0, 4.0})}) {
    GridFunction g = sample_product(phi, 2.0, 17);
    GridEnvelope env(g);
    GridFunction g2 = g;
    g2.values = env.values();
    GridEnvelope env2(g2);
    double worst = 0;
    for (size_t k = 0; k < g.size(); ++k)
      worst = std::max(worst,
                       std::abs(env2.values()[k].value() - env.values()[k].value()));
    CHECK(worst <= 1e-9);
  }
}

TEST_CASE("property: almost-convexity survives halving beta") {
  auto ax = GridFunction::symmetric_axis(2.0, 9);
  std::vector<Vec> pts;
  for (double x : ax)
    for (double y : ax) pts.push_back({x, y});
  std::vector<double> alphas{0.5, 0.25, 0.75};

  PhiFunction half = PhiFunction::linf_indicator(2, 0.5);
  REQUIRE(almost_convex_bruteforce(half, pts, alphas, 0.5, 1e-9).pass);
  CHECK(almost_convex_bruteforce(half, pts, alphas, 0.25, 1e-9).pass);
  CHECK(almost_convex_bruteforce(half, pts, alphas, 0.125, 1e-9).pass);

  PhiFunction conv = PhiFunction::power(2, 2.0);
  REQUIRE(almost_convex_bruteforce(conv, pts, alphas, 1.0, 1e-9).pass);
  CHECK(almost_convex_bruteforce(conv, pts, alphas, 0.5, 1e-9).pass);
}

TEST_CASE("property: certificates ignore probe and ball ordering") {
  auto phi = weighted_dp();
  ConditionConfig a, b;
  a.sampler.count = 32;
  b.sampler.count = 32;
  a.balls = ConditionConfig::dyadic_balls(phi, 1, 3);
  b.balls = a.balls;
  std::reverse(b.balls.begin(), b.balls.end());
  a.probe = ProbeSet::defaults(2);
  b.probe = a.probe;
  std::reverse(b.probe.directions.begin(), b.probe.directions.end());
  std::reverse(b.probe.levels.begin(), b.probe.levels.end());

  auto ca = check_a1(phi, a);
  auto cb = check_a1(phi, b);
  CHECK(ca.verdict == cb.verdict);
  REQUIRE(ca.beta.has_value());
  REQUIRE(cb.beta.has_value());
  CHECK(*ca.beta == *cb.beta);
  CHECK(ca.constants.at("eligible.total") == cb.constants.at("eligible.total"));
}

TEST_CASE("property: failure witnesses replay outside the checker") {
  ConditionConfig cfg;
  cfg.tol = 1e-13;
  auto cert = check_almost_convex(min_quad(), cfg);
  REQUIRE(cert.witness.has_value());
  const Witness& w = *cert.witness;
  REQUIRE(w.xi2.has_value());
  REQUIRE(w.alpha.has_value());
  Vec mix{w.beta * (*w.alpha * w.xi[0] + (1 - *w.alpha) * (*w.xi2)[0]),
          w.beta * (*w.alpha * w.xi[1] + (1 - *w.alpha) * (*w.xi2)[1])};
  double lhs = min_quad()(mix).value();
  double rhs = *w.alpha * min_quad()(w.xi).value() +
               (1 - *w.alpha) * min_quad()(*w.xi2).value();
  CHECK(lhs == doctest::Approx(w.lhs).epsilon(1e-12));
  CHECK(rhs == doctest::Approx(w.rhs).epsilon(1e-12));
  CHECK(lhs > rhs);
}

TEST_CASE("property: chain constants satisfy their defining identities") {
  auto phi = weighted_dp();
  ConditionConfig cfg;
  cfg.sampler.count = 32;
  cfg.balls = ConditionConfig::dyadic_balls(phi, 1, 3);
  auto a1 = check_a1(phi, cfg);
  REQUIRE(a1.passed());
  auto cert = a1_implies_m_chain(phi, a1, cfg);
  REQUIRE(cert.passed());
  double K = cert.constants.at("K");
  double i = cert.constants.at("i");
  double bac = cert.constants.at("beta.ac");
  double bprime = cert.constants.at("beta.prime");
  double ba1 = cert.constants.at("beta.a1");
  double bfinal = cert.constants.at("beta.final");
  CHECK(std::pow(2.0, i) >= 3.0);  // 2^i >= m + 1
  CHECK(bprime == doctest::Approx(std::pow(bac, i)).epsilon(1e-12));
  CHECK(bfinal == doctest::Approx((K / (K + 1)) * ba1 * bprime).epsilon(1e-12));
  CHECK(bfinal <= ba1);
  for (const auto& b : cfg.balls) {
    double s = K / phi.measure(b) + 1.0;
    CHECK(s >= cert.constants.at("s.min") - 1e-9);
    CHECK(s <= cert.constants.at("s.max") + 1e-9);
  }
}

TEST_CASE("property: modular accumulation is reorder-stable") {
  auto phi = weighted_dp();
  SamplerSpec spec;
  spec.count = 64;
  Ball b{{0.2, 0.1}, 0.3};
  VectorField v = VectorField::on_ball(
      phi, b, [](const Vec& x) { return Vec{x[0] + 0.5, x[1] - 0.25}; }, spec);
  VectorField rev = v;
  std::reverse(rev.samples.begin(), rev.samples.end());
  double r1 = modular(phi, v).value();
  double r2 = modular(phi, rev).value();
  CHECK(std::abs(r1 - r2) <= 1e-12 * (1 + r1));

  // splitting a sample's weight in half changes nothing
  VectorField split = v;
  FieldSample s = split.samples[0];
  split.samples[0].weight = s.weight / 2;
  split.samples.push_back({s.x, s.value, s.weight / 2});
  CHECK(std::abs(modular(phi, split).value() - r1) <= 1e-12 * (1 + r1));
}

TEST_CASE("property: luxemburg certifies its own value on random fields") {
  auto phi = weighted_dp();
  Rng rng(99);
  SamplerSpec spec;
  spec.count = 32;
  for (int it = 0; it < 10; ++it) {
    Ball b{{rng.uniform(-0.5, 0.5), rng.uniform(-0.5, 0.5)}, rng.uniform(0.05, 0.4)};
    Vec val{rng.uniform(-2.0, 2.0), rng.uniform(-2.0, 2.0)};
    VectorField v = VectorField::constant_on_ball(phi, b, val, spec);
    NormResult nr = luxemburg_norm(phi, v);
    if (nr.status != NormResult::Status::Finite || nr.value == 0.0) continue;
    CHECK(modular(phi, v.scaled_by(1.0 / nr.value)).value() <= 1.0 + 1e-8);
  }
}
