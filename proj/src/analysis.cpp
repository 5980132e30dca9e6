#include "orlicz/analysis.hpp"

#include <cmath>
#include <sstream>

#include "orlicz/envelope.hpp"
#include "orlicz/errors.hpp"
#include "orlicz/oracle.hpp"
#include "orlicz/strong_check.hpp"
#include "orlicz/text.hpp"

namespace orlicz {

namespace {

int exit_of(Verdict v) {
  switch (v) {
    case Verdict::Pass: return 0;
    case Verdict::Fail: return 1;
    default: return 2;
  }
}

std::string indent2(const std::string& text) {
  std::string out;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) out += "  " + line + "\n";
  return out;
}

std::string header(const AnalysisConfig& cfg, const std::string& command) {
  std::string out;
  out += "phicheck report\n";
  out += "command: " + command + "\n";
  out += "seed: " + fmt_int(static_cast<long long>(cfg.seed)) + "\n";
  out += "config:\n" + indent2(serialize_config(cfg));
  out += "---\n";
  return out;
}

GridFunction xi_grid(const AnalysisConfig& cfg, const PhiFunction& plain) {
  std::vector<std::vector<double>> axes(
      cfg.m, GridFunction::symmetric_axis(cfg.grid.radius, cfg.grid.axis_points));
  return GridFunction::product(std::move(axes),
                               [&](const Vec& xi) { return plain(xi); });
}

RunResult from_certificate(const AnalysisConfig& cfg, const std::string& command,
                           const ConditionCertificate& cert,
                           const std::string& extra = "") {
  RunResult r;
  r.report = header(cfg, command) + extra + cert.report();
  r.verdict_line = cert.verdict_line();
  r.exit_code = exit_of(cert.verdict);
  return r;
}

ConditionCertificate strong_phi_certificate(const PhiFunction& plain,
                                            const AnalysisConfig& cfg) {
  StrongProbeSpec sp;
  sp.tol = cfg.tol;
  if (!cfg.probe.explicit_dirs.empty()) sp.directions = cfg.probe.explicit_dirs;
  StrongPhiReport rep = check_strong_phi(plain, sp);
  ConditionCertificate cert;
  cert.condition = "strong-phi";
  cert.verdict = rep.all_pass() ? Verdict::Pass : Verdict::Fail;
  cert.constants["evaluations"] = static_cast<double>(rep.evaluations);
  std::istringstream in(rep.summary());
  std::string line;
  while (std::getline(in, line))
    if (!line.empty()) cert.notes.push_back(line);
  if (!rep.all_pass() && rep.convexity_witness) {
    const ConvexityWitness& w = *rep.convexity_witness;
    Witness wit;
    wit.xi = w.xi;
    wit.xi2 = w.xi2;
    wit.alpha = w.alpha;
    wit.beta = 1.0;
    wit.lhs = w.lhs;
    wit.rhs = w.rhs;
    wit.violation = w.violation;
    cert.witness = wit;
  }
  return cert;
}

}  // namespace

RunResult run_check(const AnalysisConfig& cfg, const std::string& condition) {
  SpatialPhiFunction phi = build_phi(cfg);
  ConditionConfig ccfg = build_condition_config(cfg, phi);
  const std::string cmd = "check " + condition;

  if (condition == "a0") return from_certificate(cfg, cmd, check_a0(phi, ccfg));
  if (condition == "a1") return from_certificate(cfg, cmd, check_a1(phi, ccfg));
  if (condition == "m") return from_certificate(cfg, cmd, check_m(phi, ccfg));
  if (condition == "azero-reduction")
    return from_certificate(cfg, cmd, check_azero_reduction(phi, ccfg));

  PhiFunction plain = build_plain_phi(cfg);
  if (condition == "inc1")
    return from_certificate(cfg, cmd,
                            check_inc1(plain, cfg.inc1_beta, ccfg.probe, cfg.tol));
  if (condition == "almost-convex")
    return from_certificate(cfg, cmd, check_almost_convex(plain, ccfg));
  if (condition == "equiv-conv") {
    ConditionCertificate ac = check_almost_convex(plain, ccfg);
    ConditionCertificate eq =
        certify_equivalence_conv(plain, ac, xi_grid(cfg, plain), cfg.tol);
    return from_certificate(cfg, cmd, eq, ac.report() + "---\n");
  }
  if (condition == "strong-phi")
    return from_certificate(cfg, cmd, strong_phi_certificate(plain, cfg));
  throw ConfigError("unknown condition '" + condition + "'");
}

RunResult run_envelope(const AnalysisConfig& cfg) {
  PhiFunction plain = build_plain_phi(cfg);
  GridFunction grid = xi_grid(cfg, plain);
  GridEnvelope env(grid);
  RunResult r;
  r.csv = envelope_csv(env);
  std::string body;
  body += "points: " + fmt_int(static_cast<long long>(grid.size())) + "\n";
  body += "axis_points: " + fmt_int(cfg.grid.axis_points) + "\n";
  body += "radius: " + fmt_num(cfg.grid.radius) + "\n";
  body += "max_slack: " + fmt_num(env.max_slack()) + "\n";
  body += "envelope: " + env.note() + "\n";
  r.verdict_line = "OK points=" + fmt_int(static_cast<long long>(grid.size())) +
                   " max_slack=" + fmt_num(env.max_slack());
  body += "verdict-line: " + r.verdict_line + "\n";
  r.report = header(cfg, "envelope") + body;
  r.exit_code = 0;
  return r;
}

RunResult run_chain(const AnalysisConfig& cfg) {
  SpatialPhiFunction phi = build_phi(cfg);
  ConditionConfig ccfg = build_condition_config(cfg, phi);
  if (cfg.psi) {
    // out of scope: the chain is only established for psi = phi
    ConditionCertificate oos = a1_implies_m_chain(phi, ConditionCertificate{}, ccfg);
    return from_certificate(cfg, "chain", oos);
  }
  ConditionCertificate a1 = check_a1(phi, ccfg);
  ConditionCertificate chain = a1_implies_m_chain(phi, a1, ccfg);
  ConditionCertificate direct = check_m(phi, ccfg);

  std::string extra = a1.report() + "---\n";
  std::string tail = "---\n" + direct.report() + "---\ncomparison:\n";
  tail += "  chain beta: " + (chain.beta ? fmt_num(*chain.beta) : std::string("n/a")) + "\n";
  tail +=
      "  direct beta: " + (direct.beta ? fmt_num(*direct.beta) : std::string("n/a")) + "\n";
  if (chain.beta && direct.beta)
    tail += std::string("  chain <= direct: ") +
            (*chain.beta <= *direct.beta * (1.0 + 1e-12) ? "yes" : "no") + "\n";

  RunResult r;
  r.report = header(cfg, "chain") + extra + chain.report() + tail;
  r.verdict_line = chain.verdict_line();
  r.exit_code = exit_of(chain.verdict);
  return r;
}

RunResult run_jensen(const AnalysisConfig& cfg) {
  SpatialPhiFunction phi = build_phi(cfg);
  ConditionConfig ccfg = build_condition_config(cfg, phi);
  Ball ball = resolve_field_ball(cfg, phi, ccfg);
  VectorField field = build_field(cfg, phi, ball);
  ConditionCertificate cert = jensen_check(phi, field, ball, cfg.jensen_beta, ccfg.sampler,
                                           cfg.tol, cfg.jensen_plus_one);
  return from_certificate(cfg, "jensen", cert);
}

RunResult run_norm(const AnalysisConfig& cfg) {
  SpatialPhiFunction phi = build_phi(cfg);
  ConditionConfig ccfg = build_condition_config(cfg, phi);
  Ball ball = resolve_field_ball(cfg, phi, ccfg);
  VectorField field = build_field(cfg, phi, ball);
  NormResult nr = luxemburg_norm(phi, field);

  std::string body;
  const char* status = nr.status == NormResult::Status::Finite     ? "finite"
                       : nr.status == NormResult::Status::Infinite ? "infinite"
                                                                   : "bracket-exhausted";
  body += "norm: " + fmt_num(nr.value) + "\n";
  body += "status: " + std::string(status) + "\n";
  body += "iterations: " + fmt_int(nr.iterations) + "\n";
  if (!nr.note.empty()) body += "note: " + nr.note + "\n";

  RunResult r;
  if (cfg.norm_scan) {
    std::vector<double> lambdas;
    for (int k = 1; k <= cfg.lambda_count; ++k)
      lambdas.push_back(cfg.lambda_max * k / cfg.lambda_count);
    ScanResult sr = norm_dense_scan(phi, field, lambdas);
    double step = cfg.lambda_max / cfg.lambda_count;
    body += "scan found: " + std::string(sr.found ? "yes" : "no") + "\n";
    if (sr.found) {
      body += "scan lambda: " + fmt_num(sr.lambda) + "\n";
      body += "scan modular: " + fmt_num(sr.modular_at) + "\n";
      if (nr.status == NormResult::Status::Finite) {
        bool agree = std::fabs(nr.value - sr.lambda) <= step * (1.0 + 1e-9);
        body += std::string("scan agrees within one step: ") + (agree ? "yes" : "no") + "\n";
      }
    }
  }
  if (nr.status == NormResult::Status::BracketExhausted) {
    r.verdict_line = "ERROR norm bracket exhausted";
    r.exit_code = 2;
  } else {
    r.verdict_line = "OK norm=" + fmt_num(nr.value);
    r.exit_code = 0;
  }
  body += "verdict-line: " + r.verdict_line + "\n";
  r.report = header(cfg, "norm") + body;
  return r;
}

}  // namespace orlicz
