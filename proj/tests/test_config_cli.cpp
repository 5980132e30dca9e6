#include "doctest.h"

#include <string>

#include "orlicz/analysis.hpp"
#include "orlicz/config.hpp"
#include "orlicz/errors.hpp"

using namespace orlicz;

namespace {

const char* kMinQuad =
    "[space]\n"
    "n = 2\n"
    "box = -2 2 -2 2\n"
    "[phi]\n"
    "m = 2\n"
    "family = min-of\n"
    "[phi.1]\n"
    "family = diag-quadratic\n"
    "weights = 1 0\n"
    "[phi.2]\n"
    "family = diag-quadratic\n"
    "weights = 0 1\n"
    "[conditions]\n"
    "beta_count = 6\n";

std::string error_message(const std::string& text) {
  try {
    parse_config_text(text);
  } catch (const ConfigError& e) {
    return e.what();
  }
  return "";
}

}  // namespace

TEST_CASE("defaults of a minimal config") {
  AnalysisConfig cfg = parse_config_text("[phi]\nfamily = power\np = 2\n");
  CHECK(cfg.n == 2);
  CHECK(cfg.m == 2);
  CHECK(cfg.beta_count == 20);
  CHECK(cfg.seed == 4242u);
  auto phi = build_phi(cfg);
  CHECK(phi.domain().lo == Vec{-1.0, -1.0});
  CHECK(phi.domain().hi == Vec{1.0, 1.0});
  CHECK(phi.x_independent());
}

TEST_CASE("serialization round-trips to a fixed point") {
  const std::vector<std::string> texts =
      {std::string(kMinQuad),
        std::string("[space]\nn = 2\n[phi]\nm = 2\nfamily = var-double-phase\nq_hi = 3.5\n"
                    "q_slope = 0.25\nA = 2\nalpha = 0.75\nx0 = 0.25 -0.125\n"
                    "[conditions]\nK = 2\n[balls]\nmode = random\ncount = 3\n"),
        std::string("[phi]\nfamily = indicator\nr = 0.5\n[grid]\naxis_points = 9\n"
                    "radius = 2\n[probe]\ndirections = 8\n")};
  for (const std::string& text : texts) {
    AnalysisConfig cfg = parse_config_text(text);
    std::string once = serialize_config(cfg);
    std::string twice = serialize_config(parse_config_text(once));
    CHECK(once == twice);
  }
}

TEST_CASE("parse errors carry line numbers") {
  std::string msg = error_message("[space]\nn = 2\nbogus = 1\n");
  CHECK(msg.find("line 3") != std::string::npos);
  CHECK(msg.find("bogus") != std::string::npos);

  CHECK(error_message("[nonsense]\nx = 1\n").find("line 1") != std::string::npos);
  CHECK(error_message("[space]\nn = abc\n").find("line 2") != std::string::npos);
  CHECK(error_message("[space]\nn\n").find("line 2") != std::string::npos);
  // min-of parts must be numbered consecutively from 1
  CHECK(error_message("[phi]\nfamily = min-of\n[phi.2]\nfamily = power\n") != "");
  // keys are validated against the declared family
  std::string famkey = error_message("[phi]\nfamily = power\nq = 3\n");
  CHECK(famkey.find("line 3") != std::string::npos);
  // explicit balls need mode = list
  CHECK(error_message("[balls]\nball1 = 0 0 0.5\n") != "");
  CHECK(error_message("[balls]\nmode = list\nball1 = 0 0\n") != "");
}

TEST_CASE("dimension checks happen at the offending line") {
  std::string msg = error_message(
      "[space]\nn = 2\n[phi]\nm = 2\nfamily = diag-quadratic\nweights = 1 2 3\n");
  CHECK(msg.find("line 6") != std::string::npos);
}

TEST_CASE("condition config assembly: beta grid, directions, balls") {
  AnalysisConfig cfg = parse_config_text(
      "[phi]\nfamily = power\n[conditions]\nbeta_count = 4\nbeta_start = 1\n"
      "beta_ratio = 0.5\n[probe]\ndirections = 8\n[balls]\nmode = dyadic\nj_min = 1\n"
      "j_max = 2\n");
  auto phi = build_phi(cfg);
  auto ccfg = build_condition_config(cfg, phi);
  CHECK(ccfg.beta_grid == std::vector<double>{1.0, 0.5, 0.25, 0.125});
  CHECK(ccfg.probe.directions.size() == 8);
  REQUIRE(ccfg.balls.size() == 2);
  CHECK(ccfg.balls[0].radius == 0.5);
  CHECK(ccfg.balls[1].radius == 0.25);

  AnalysisConfig rnd = parse_config_text(
      "[phi]\nfamily = power\n[balls]\nmode = random\ncount = 5\n[run]\nseed = 77\n");
  auto rphi = build_phi(rnd);
  auto b1 = build_condition_config(rnd, rphi).balls;
  auto b2 = build_condition_config(rnd, rphi).balls;
  REQUIRE(b1.size() == 5);
  for (size_t i = 0; i < b1.size(); ++i) {
    CHECK(b1[i].center == b2[i].center);
    CHECK(b1[i].radius == b2[i].radius);
    CHECK(rphi.measure(b1[i]) <= 1.0 + 1e-12);
  }
}

TEST_CASE("psi section builds a distinct auxiliary integrand") {
  AnalysisConfig cfg = parse_config_text(
      "[phi]\nfamily = power\np = 2\n[psi]\nfamily = power\np = 3\n");
  auto psi = build_psi(cfg);
  REQUIRE(psi.valid());
  CHECK(psi.eval({0.0, 0.0}, {2.0, 0.0}).value() == doctest::Approx(8.0).epsilon(1e-12));
  CHECK(!build_psi(parse_config_text("[phi]\nfamily = power\n")).valid());
}

TEST_CASE("run_check produces deterministic reports with the documented header") {
  AnalysisConfig cfg = parse_config_text(kMinQuad);
  RunResult r = run_check(cfg, "almost-convex");
  CHECK(r.exit_code == 1);
  CHECK(r.report.rfind("phicheck report\n", 0) == 0);
  CHECK(r.report.find("seed:") != std::string::npos);
  CHECK(r.report.find("config:") != std::string::npos);
  CHECK(r.verdict_line.rfind("FAIL witness=", 0) == 0);
  RunResult again = run_check(cfg, "almost-convex");
  CHECK(r.report == again.report);
  CHECK(r.exit_code == again.exit_code);

  RunResult a0 = run_check(parse_config_text("[phi]\nfamily = power\n"), "a0");
  CHECK(a0.exit_code == 0);
  CHECK(a0.verdict_line.rfind("PASS beta=", 0) == 0);

  CHECK_THROWS_AS(run_check(cfg, "bogus"), ConfigError);
}

TEST_CASE("strong-phi check runs through the analysis front end") {
  RunResult r = run_check(parse_config_text(kMinQuad), "strong-phi");
  CHECK(r.exit_code == 1);
  CHECK(r.report.find("convexity") != std::string::npos);
}

TEST_CASE("envelope run emits the CSV with infinities spelled out") {
  AnalysisConfig cfg = parse_config_text(
      "[phi]\nfamily = indicator\nr = 0.5\n[grid]\naxis_points = 9\nradius = 2\n");
  RunResult r = run_envelope(cfg);
  CHECK(r.exit_code == 0);
  CHECK(r.csv.rfind("xi_1,xi_2,value,minorant,window_contact\n", 0) == 0);
  CHECK(r.csv.find("inf") != std::string::npos);
  CHECK(r.verdict_line.rfind("OK points=81", 0) == 0);
  CHECK(r.csv == run_envelope(cfg).csv);
}

TEST_CASE("chain run goes out of scope when psi differs from phi") {
  AnalysisConfig cfg = parse_config_text(
      "[phi]\nfamily = power\n[psi]\nfamily = power\np = 3\n"
      "[balls]\nmode = dyadic\nj_max = 2\n");
  RunResult r = run_chain(cfg);
  CHECK(r.exit_code == 2);
  CHECK(r.verdict_line.rfind("OUT-OF-SCOPE", 0) == 0);
}

TEST_CASE("jensen and norm runs complete on a plain quadratic") {
  AnalysisConfig cfg = parse_config_text(
      "[phi]\nfamily = power\n[field]\nkind = constant\nvalue = 0.5 0\n"
      "[balls]\nmode = dyadic\nj_max = 2\n");
  RunResult j = run_jensen(cfg);
  CHECK(j.exit_code == 0);
  CHECK(j.verdict_line.rfind("PASS", 0) == 0);

  RunResult n = run_norm(cfg);
  CHECK(n.exit_code == 0);
  CHECK(n.verdict_line.rfind("OK norm=", 0) == 0);
  CHECK(n.report == run_norm(cfg).report);
}
