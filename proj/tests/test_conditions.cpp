#include "doctest.h"

#include <cmath>

#include "orlicz/conditions.hpp"
#include "orlicz/errors.hpp"

using namespace orlicz;

namespace {

Box unit_box() { return Box{{-1.0, -1.0}, {1.0, 1.0}}; }

PhiFunction min_quad() {
  return PhiFunction::min_of({PhiFunction::diag_quadratic({1.0, 0.0}),
                              PhiFunction::diag_quadratic({0.0, 1.0})});
}

SpatialPhiFunction plain(PhiFunction phi) {
  return SpatialPhiFunction::constant(unit_box(), std::move(phi));
}

GridFunction sample_product(const PhiFunction& phi, double radius, int count) {
  std::vector<std::vector<double>> axes(phi.dim(), GridFunction::symmetric_axis(radius, count));
  return GridFunction::product(axes, [&](const Vec& xi) { return phi(xi); });
}

ConditionConfig lean_config(const SpatialPhiFunction& phi, int balls = 3) {
  ConditionConfig cfg;
  cfg.balls = ConditionConfig::dyadic_balls(phi, 1, balls);
  cfg.sampler.count = 32;
  return cfg;
}

}  // namespace

TEST_CASE("probe defaults: axis-snapped fan, unit level in the middle") {
  ProbeSet p = ProbeSet::defaults(2);
  REQUIRE(p.directions.size() == 16);
  CHECK(p.directions[0] == Vec{1.0, 0.0});
  CHECK(p.directions[4] == Vec{0.0, 1.0});
  REQUIRE(p.levels.size() == 9);
  CHECK(p.levels[4] == 1.0);
  CHECK(p.levels.front() == doctest::Approx(0.25).epsilon(1e-12));
  CHECK(p.levels.back() == doctest::Approx(4.0).epsilon(1e-12));
  CHECK(p.alphas == std::vector<double>{0.5, 0.25, 0.75});

  auto grid = ConditionConfig::default_beta_grid();
  REQUIRE(grid.size() == 20);
  CHECK(grid.front() == 1.0);
  CHECK(grid.back() == doctest::Approx(std::pow(2.0, -19)).epsilon(1e-12));
  for (size_t i = 1; i < grid.size(); ++i) CHECK(grid[i] < grid[i - 1]);

  auto balls = ConditionConfig::dyadic_balls(plain(PhiFunction::power(2, 2.0)));
  REQUIRE(!balls.empty());
  CHECK(balls[0].radius == 0.5);
  CHECK(balls[1].radius == 0.25);
  for (const auto& b : balls) CHECK(b.center == Vec{0.0, 0.0});
}

TEST_CASE("(A0) on the scaled quadratic lands on the dyadic normalization scale") {
  // c |xi|^2 with c = 1e6 first fits under 1 at beta = 2^-10.
  auto phi = plain(PhiFunction::times(1e6, PhiFunction::power(2, 2.0)));
  ConditionConfig cfg;
  cfg.sampler.count = 32;
  auto cert = check_a0(phi, cfg);
  CHECK(cert.passed());
  REQUIRE(cert.beta.has_value());
  CHECK(*cert.beta == 0.0009765625);
  REQUIRE(!cert.beta_outcomes.empty());
  CHECK(cert.beta_outcomes.front().beta == 1.0);
  CHECK(!cert.beta_outcomes.front().pass);
  CHECK(cert.verdict_line() == "PASS beta=0.0009765625");
  CHECK(cert.report() == check_a0(phi, cfg).report());
}

TEST_CASE("(A0) fails outright when the integrand is nearly degenerate") {
  auto phi = plain(PhiFunction::times(1e-30, PhiFunction::power(2, 2.0)));
  ConditionConfig cfg;
  cfg.sampler.count = 32;
  auto cert = check_a0(phi, cfg);
  CHECK(cert.verdict == Verdict::Fail);
  CHECK(cert.witness.has_value());
  CHECK(cert.verdict_line().rfind("FAIL witness=", 0) == 0);
}

TEST_CASE("(Inc)1 separates superlinear from sublinear growth") {
  ProbeSet p1 = ProbeSet::defaults(2);
  CHECK(check_inc1(PhiFunction::power(2, 2.0), 1.0, p1, 1e-9).passed());
  CHECK(check_inc1(PhiFunction::power(2, 1.0), 1.0, p1, 1e-9).passed());

  PhiFunction root = PhiFunction::from_callable(
      1, [](const Vec& xi) { return ExtReal(std::sqrt(std::abs(xi[0]))); }, false, "root");
  auto cert = check_inc1(root, 1.0, ProbeSet::defaults(1), 1e-9);
  CHECK(cert.verdict == Verdict::Fail);
  REQUIRE(cert.witness.has_value());
  REQUIRE(cert.witness->alpha.has_value());
  CHECK(*cert.witness->alpha < 1.0);
}

TEST_CASE("almost convexity: min-quad fails at every beta with the axis witness") {
  // The violation at (e1, e2, 1/2) is beta^2/4 against a zero right-hand side,
  // so a loose tolerance would absorb it once beta^2/4 <= tol.  Run strict.
  ConditionConfig cfg;
  cfg.tol = 1e-13;
  auto cert = check_almost_convex(min_quad(), cfg);
  CHECK(cert.verdict == Verdict::Fail);
  REQUIRE(cert.witness.has_value());
  const Witness& w = *cert.witness;
  CHECK(w.beta == 1.0);
  CHECK(w.xi == Vec{1.0, 0.0});
  REQUIRE(w.xi2.has_value());
  CHECK(*w.xi2 == Vec{0.0, 1.0});
  REQUIRE(w.alpha.has_value());
  CHECK(*w.alpha == 0.5);
  CHECK(w.lhs == doctest::Approx(0.25).epsilon(1e-12));
  CHECK(w.rhs == 0.0);
  for (const auto& o : cert.beta_outcomes) CHECK(!o.pass);
}

TEST_CASE("almost convexity: the default tolerance absorbs the min-quad gap at tiny beta") {
  // At beta = 2^-14 the violation beta^2/4 = 2^-30 dips below 1e-9, so the
  // default-tolerance run certifies exactly there.  Frozen as a regression of
  // the comparison semantics, not as a statement about the integrand.
  ConditionConfig cfg;
  auto cert = check_almost_convex(min_quad(), cfg);
  CHECK(cert.passed());
  REQUIRE(cert.beta.has_value());
  CHECK(*cert.beta == 6.103515625e-05);
}

TEST_CASE("almost convexity: convex and half-indicator integrands certify") {
  ConditionConfig cfg;
  auto conv = check_almost_convex(PhiFunction::power(2, 2.0), cfg);
  CHECK(conv.passed());
  CHECK(*conv.beta == 1.0);

  auto half = check_almost_convex(PhiFunction::linf_indicator(2, 0.5), cfg);
  CHECK(half.passed());
  CHECK(*half.beta == 0.5);
}

TEST_CASE("equivalence with the convex envelope follows from almost convexity") {
  ConditionConfig cfg;
  auto ac = check_almost_convex(PhiFunction::power(2, 2.0), cfg);
  auto eq = certify_equivalence_conv(PhiFunction::power(2, 2.0), ac,
                                     sample_product(PhiFunction::power(2, 2.0), 2.0, 17));
  CHECK(eq.passed());
  CHECK(eq.constants.at("i") == 2.0);
  CHECK(eq.constants.at("beta.prime") == 1.0);
  CHECK(eq.report().find("envelope:") != std::string::npos);

  PhiFunction half = PhiFunction::linf_indicator(2, 0.5);
  auto ac_half = check_almost_convex(half, cfg);
  auto eq_half = certify_equivalence_conv(half, ac_half, sample_product(half, 2.0, 17));
  CHECK(eq_half.passed());
  CHECK(eq_half.constants.at("beta.ac") == 0.5);
  CHECK(eq_half.constants.at("beta.prime") == 0.25);

  ConditionConfig strict = cfg;
  strict.tol = 1e-13;
  auto ac_mq = check_almost_convex(min_quad(), strict);
  auto eq_mq = certify_equivalence_conv(min_quad(), ac_mq, sample_product(min_quad(), 2.0, 17));
  CHECK(eq_mq.verdict == Verdict::Fail);
  CHECK(!eq_mq.notes.empty());
}

TEST_CASE("(A1) certifies the x-independent quadratic at beta = 1") {
  auto phi = plain(PhiFunction::power(2, 2.0));
  auto cfg = lean_config(phi, 4);
  auto cert = check_a1(phi, cfg);
  CHECK(cert.passed());
  CHECK(*cert.beta == 1.0);
  CHECK(cert.constants.at("K") == 1.0);
  CHECK(cert.constants.at("balls") == 4.0);
  CHECK(cert.constants.at("eligible.total") > 0.0);
  CHECK(cert.ball_lines.size() == 4);
}

TEST_CASE("(M) certifies the x-independent quadratic with envelope slack accounted") {
  // With the full dyadic ball fallback the smallest ball saturates near
  // |xi| ~ 36, so the envelope window is wide and its interpolation slack
  // exceeds the +1 allowance; beta = 1 fails on that ball and 1/2 certifies.
  auto phi = plain(PhiFunction::power(2, 2.0));
  ConditionConfig cfg;
  cfg.sampler.count = 32;
  auto cert = check_m(phi, cfg);
  CHECK(cert.passed());
  CHECK(*cert.beta == 0.5);
  CHECK(cert.constants.count("env.max_slack") == 1);
  CHECK(cert.constants.at("env.max_slack") > 0.0);

  // Restricted to the three largest balls the windows are narrow, slack stays
  // under the +1 allowance, and the convex integrand certifies at beta = 1.
  auto lean = check_m(phi, lean_config(phi));
  CHECK(lean.passed());
  CHECK(*lean.beta == 1.0);
}

TEST_CASE("constant chain: explicit scales multiply out and the result certifies") {
  auto phi = plain(PhiFunction::power(2, 2.0));
  auto cfg = lean_config(phi);
  auto a1 = check_a1(phi, cfg);
  REQUIRE(a1.passed());
  auto cert = a1_implies_m_chain(phi, a1, cfg);
  CHECK(cert.passed());
  CHECK(cert.constants.at("beta.a1") == 1.0);
  CHECK(cert.constants.at("i") == 2.0);
  CHECK(cert.constants.at("beta.ac") == 0.125);
  CHECK(cert.constants.at("beta.prime") == 0.015625);
  CHECK(cert.constants.at("beta.final") == 0.0078125);
  CHECK(*cert.beta == 0.0078125);
  // s = K/mu + 1 per ball, so s.max belongs to the smallest ball
  double mu_min = HUGE_VAL;
  for (const auto& b : cfg.balls) mu_min = std::min(mu_min, phi.measure(b));
  CHECK(cert.constants.at("s.max") ==
        doctest::Approx(1.0 / mu_min + 1.0).epsilon(1e-9));
  for (const auto& line : cert.ball_lines) CHECK(line.find("s=") != std::string::npos);
}

TEST_CASE("constant chain refuses a genuine auxiliary integrand") {
  auto phi = plain(PhiFunction::power(2, 2.0));
  auto cfg = lean_config(phi);
  cfg.psi = plain(PhiFunction::power(2, 3.0));
  auto cert = a1_implies_m_chain(phi, ConditionCertificate{}, cfg);
  CHECK(cert.verdict == Verdict::OutOfScope);
  CHECK(cert.verdict_line().rfind("OUT-OF-SCOPE", 0) == 0);
}

TEST_CASE("paired instances: the (M) bound is never looser than the (A1) bound") {
  auto phi = plain(PhiFunction::power(2, 2.0));
  auto cfg = lean_config(phi);
  cfg.beta_grid = {1.0, 0.5, 0.25};
  auto insts = m_vs_a1_instances(phi, cfg);
  REQUIRE(!insts.empty());
  long bad = 0, checked = 0;
  for (const auto& it : insts) {
    if (it.a1_eligible && it.m_eligible) {
      ++checked;
      CHECK(it.m_rhs <= it.a1_rhs + 1e-12 * (1 + std::abs(it.a1_rhs)));
    }
    if (it.m_eligible && it.m_pass && it.a1_eligible && !it.a1_pass) ++bad;
  }
  CHECK(checked > 0);
  CHECK(bad == 0);
}

TEST_CASE("ball-Jensen inequality for a constant field") {
  auto phi = plain(PhiFunction::power(2, 2.0));
  Ball b{{0.0, 0.0}, 0.5};
  SamplerSpec spec;
  spec.count = 64;
  VectorField f = VectorField::constant_on_ball(phi, b, {0.5, 0.0}, spec);

  auto with_one = jensen_check(phi, f, b, 1.0, spec, 1e-9, true);
  CHECK(with_one.passed());
  CHECK(with_one.constants.at("rho") ==
        doctest::Approx(phi.measure(b) * 0.25).epsilon(1e-9));
  CHECK(with_one.constants.at("lhs") == doctest::Approx(0.25).epsilon(1e-9));

  auto exact = jensen_check(phi, f, b, 1.0, spec, 1e-9, false);
  CHECK(exact.passed());

  VectorField big = VectorField::constant_on_ball(phi, b, {3.0, 0.0}, spec);
  CHECK_THROWS_AS(jensen_check(phi, big, b, 1.0, spec, 1e-9, true), ConfigError);

  Ball elsewhere{{0.5, 0.5}, 0.1};
  CHECK_THROWS_AS(jensen_check(phi, f, elsewhere, 1.0, spec, 1e-9, true), ConfigError);
}

TEST_CASE("discrete Jensen splits convex from almost-convex integrands") {
  auto ok = jensen_almost_convex(PhiFunction::power(2, 2.0), {0.5, 0.5},
                                 {{1.0, 0.0}, {0.0, 1.0}}, 1.0, 1e-9);
  CHECK(ok.passed());
  auto bad = jensen_almost_convex(min_quad(), {0.5, 0.5}, {{1.0, 0.0}, {0.0, 1.0}}, 1.0, 1e-9);
  CHECK(bad.verdict == Verdict::Fail);
  CHECK(bad.constants.at("lhs") == doctest::Approx(0.25).epsilon(1e-12));
}

TEST_CASE("the two (M) formulations certify each other under (A0)") {
  auto phi = plain(PhiFunction::power(2, 2.0));
  auto cfg = lean_config(phi);
  auto cert = check_azero_reduction(phi, cfg);
  CHECK(cert.passed());
  CHECK(cert.constants.at("beta.a0") == 1.0);
  CHECK(cert.constants.count("beta.plus1") == 1);
  CHECK(cert.constants.count("beta.range") == 1);
  CHECK(cert.constants.count("beta.forward") == 1);
  CHECK(cert.constants.count("beta.backward") == 1);

  // without (A0) the reduction has no normalization scale to work with
  auto degenerate = plain(PhiFunction::times(1e-30, PhiFunction::power(2, 2.0)));
  auto fail = check_azero_reduction(degenerate, lean_config(degenerate));
  CHECK(fail.verdict == Verdict::Fail);
  CHECK(!fail.notes.empty());
}

TEST_CASE("configuration validation rejects broken inputs") {
  auto phi = plain(PhiFunction::power(2, 2.0));
  {
    ConditionConfig cfg;
    cfg.K = 0.0;
    CHECK_THROWS_AS(check_a1(phi, cfg), ConfigError);
  }
  {
    ConditionConfig cfg;
    cfg.env_axis_points = 3;
    CHECK_THROWS_AS(check_m(phi, cfg), ConfigError);
  }
  {
    ConditionConfig cfg;
    cfg.psi = SpatialPhiFunction::constant(unit_box(), PhiFunction::power(1, 2.0));
    CHECK_THROWS_AS(check_a1(phi, cfg), ConfigError);
  }
  {
    ConditionConfig cfg;
    cfg.balls = {Ball{{5.0, 5.0}, 0.1}};  // outside the domain: measure zero
    CHECK_THROWS_AS(check_a1(phi, cfg), ConfigError);
  }
}

TEST_CASE("instance recording keeps the per-probe table") {
  auto phi = plain(PhiFunction::power(2, 2.0));
  auto cfg = lean_config(phi, 2);
  cfg.beta_grid = {1.0, 0.5};
  cfg.record_instances = true;
  auto cert = check_a1(phi, cfg);
  REQUIRE(!cert.instances.empty());
  long eligible = 0;
  for (const auto& r : cert.instances) {
    CHECK(r.ball_index >= 0);
    CHECK(r.ball_index < 2);
    if (r.eligible) ++eligible;
  }
  CHECK(eligible > 0);
}
