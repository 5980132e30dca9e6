#include "orlicz/conditions.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>

#include "orlicz/gauge.hpp"
#include "orlicz/oracle.hpp"
#include "orlicz/rng.hpp"
#include "orlicz/strong_check.hpp"
#include "orlicz/text.hpp"

namespace orlicz {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// lhs <= rhs up to a relative tolerance anchored at 1 + |rhs|; an infinite
// right-hand side is always satisfied, an infinite left-hand side never
// (unless the right is infinite too).
bool holds_leq(double lhs, double rhs, double tol) {
  if (std::isinf(rhs)) return true;
  if (std::isinf(lhs)) return false;
  return lhs <= rhs + tol * (1.0 + std::fabs(rhs));
}

double rel_violation(double lhs, double rhs) {
  if (std::isinf(rhs)) return 0.0;
  if (std::isinf(lhs)) return kInf;
  return (lhs - rhs) / (1.0 + std::fabs(rhs));
}

Witness make_witness(int ball_index, const std::optional<Ball>& ball, Vec xi, double beta,
                     double lhs, double rhs) {
  Witness w;
  w.ball_index = ball_index;
  w.ball = ball;
  w.xi = std::move(xi);
  w.beta = beta;
  w.lhs = lhs;
  w.rhs = rhs;
  w.violation = rel_violation(lhs, rhs);
  return w;
}

// Keep the largest violation; strict comparison keeps the first of equals so
// witnesses are stable under scan order.
void keep_worst(std::optional<Witness>& worst, const Witness& cand) {
  if (!worst || cand.violation > worst->violation) worst = cand;
}

const char* verdict_name(Verdict v) {
  switch (v) {
    case Verdict::Pass: return "PASS";
    case Verdict::Fail: return "FAIL";
    case Verdict::ConfigErr: return "CONFIG-ERROR";
    case Verdict::OutOfScope: return "OUT-OF-SCOPE";
  }
  return "?";
}

ProbeSet resolve_probe(const ProbeSet& in, int m) {
  ProbeSet out = in;
  ProbeSet defs = ProbeSet::defaults(m);
  if (out.directions.empty()) out.directions = std::move(defs.directions);
  if (out.levels.empty()) out.levels = std::move(defs.levels);
  if (out.pair_levels.empty()) out.pair_levels = std::move(defs.pair_levels);
  if (out.alphas.empty()) out.alphas = std::move(defs.alphas);
  for (const Vec& d : out.directions) {
    if (static_cast<int>(d.size()) != m)
      throw ConfigError("probe direction dimension does not match the phi-function");
    if (!(norm2(d) > 0)) throw ConfigError("probe direction must be nonzero");
  }
  for (double l : out.levels)
    if (!(l > 0) || !std::isfinite(l)) throw ConfigError("probe levels must be positive");
  for (double l : out.pair_levels)
    if (!(l > 0) || !std::isfinite(l)) throw ConfigError("probe pair levels must be positive");
  for (double a : out.alphas)
    if (!(a > 0) || !(a < 1)) throw ConfigError("probe alphas must lie in (0, 1)");
  return out;
}

std::vector<double> normalized_beta_grid(std::vector<double> grid) {
  if (grid.empty()) grid = ConditionConfig::default_beta_grid();
  for (double b : grid)
    if (!(b > 0) || b > 1 || !std::isfinite(b))
      throw ConfigError("beta grid entries must lie in (0, 1]");
  std::sort(grid.begin(), grid.end(), std::greater<>());
  grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
  return grid;
}

ConditionConfig resolve_config(const SpatialPhiFunction& phi, const ConditionConfig& in,
                               bool need_balls) {
  if (!phi.valid()) throw ConfigError("a spatial phi-function is required");
  ConditionConfig cfg = in;
  if (!(cfg.K > 0) || !std::isfinite(cfg.K)) throw ConfigError("K must be positive and finite");
  if (!(cfg.tol >= 0)) throw ConfigError("tol must be nonnegative");
  if (cfg.env_axis_points < 5) throw ConfigError("env_axis_points must be at least 5");
  cfg.beta_grid = normalized_beta_grid(std::move(cfg.beta_grid));
  cfg.probe = resolve_probe(cfg.probe, phi.vec_dim());
  if (cfg.psi.valid() &&
      (cfg.psi.space_dim() != phi.space_dim() || cfg.psi.vec_dim() != phi.vec_dim()))
    throw ConfigError("psi dimensions do not match phi");
  if (need_balls) {
    if (cfg.balls.empty()) cfg.balls = ConditionConfig::dyadic_balls(phi);
    for (size_t i = 0; i < cfg.balls.size(); ++i) {
      const Ball& b = cfg.balls[i];
      if (static_cast<int>(b.center.size()) != phi.space_dim())
        throw ConfigError("ball " + fmt_int(static_cast<long long>(i)) +
                          ": center dimension mismatch");
      if (!(b.radius > 0) || !std::isfinite(b.radius))
        throw ConfigError("ball " + fmt_int(static_cast<long long>(i)) +
                          ": radius must be positive");
      double mu = phi.measure(b);
      if (!(mu > 0))
        throw ConfigError("ball " + fmt_int(static_cast<long long>(i)) +
                          " has zero measure in the domain");
      if (mu > 1.0 + 1e-9)
        throw ConfigError("ball " + fmt_int(static_cast<long long>(i)) + " has measure " +
                          fmt_num(mu) + " > 1");
    }
  }
  return cfg;
}

// Largest radius along dir with g(t dir) <= threshold (the constraint-
// saturating radius).  Doubling/halving bracket, then bisection keeping the
// inside endpoint; *saturated is false when the search hits its cap.
double saturating_radius(const PhiFunction& g, const Vec& dir, double threshold,
                         bool* saturated) {
  auto inside = [&](double t) { return g(scaled(t, dir)).value() <= threshold; };
  const double cap = 1048576.0;  // 2^20
  *saturated = true;
  double lo, hi;
  if (inside(1.0)) {
    lo = 1.0;
    while (lo < cap && inside(2.0 * lo)) lo *= 2.0;
    if (lo >= cap) {
      *saturated = false;
      return cap;
    }
    hi = 2.0 * lo;
  } else {
    hi = 1.0;
    while (hi > 1.0 / cap && !inside(0.5 * hi)) hi *= 0.5;
    lo = hi > 1.0 / cap ? 0.5 * hi : 0.0;
  }
  for (int i = 0; i < 60; ++i) {
    double mid = 0.5 * (lo + hi);
    (inside(mid) ? lo : hi) = mid;
  }
  return lo > 0 ? lo : hi;
}

struct BallContext {
  int index = 0;
  Ball ball;
  double mu = 0;
  double threshold = 0;  // K / mu(B)
  PhiFunction phi_minus, phi_plus, psi_minus;
  bool psi_shared = true;  // psi == phi
  std::vector<double> sat_radius;
  bool all_saturated = true;
  std::vector<Vec> probes;  // directions x levels, scaled by sat_radius
  double window_radius = 0;
  std::shared_ptr<const GridEnvelope> phi_env, psi_env;
};

BallContext build_context(const SpatialPhiFunction& phi, const ConditionConfig& cfg, int index) {
  BallContext c;
  c.index = index;
  c.ball = cfg.balls[index];
  c.mu = phi.measure(c.ball);
  c.threshold = cfg.K / c.mu;
  c.phi_minus = phi.ball_inf(c.ball, cfg.sampler);
  c.phi_plus = phi.ball_sup(c.ball, cfg.sampler);
  c.psi_shared = !cfg.psi.valid();
  c.psi_minus = c.psi_shared ? c.phi_minus : cfg.psi.ball_inf(c.ball, cfg.sampler);
  double max_len = 0;
  for (const Vec& d : cfg.probe.directions) {
    bool sat = true;
    double t = saturating_radius(c.psi_minus, d, c.threshold, &sat);
    c.sat_radius.push_back(t);
    c.all_saturated = c.all_saturated && sat;
    for (double lv : cfg.probe.levels) {
      c.probes.push_back(scaled(lv * t, d));
      max_len = std::max(max_len, lv * t * norm2(d));
    }
  }
  c.window_radius = cfg.env_radius > 0 ? cfg.env_radius : std::max(1.05 * max_len, 1.0);
  return c;
}

std::vector<BallContext> build_contexts(const SpatialPhiFunction& phi,
                                        const ConditionConfig& cfg) {
  std::vector<BallContext> out;
  out.reserve(cfg.balls.size());
  for (size_t i = 0; i < cfg.balls.size(); ++i)
    out.push_back(build_context(phi, cfg, static_cast<int>(i)));
  return out;
}

void ensure_envelopes(BallContext& c, const ConditionConfig& cfg) {
  if (c.phi_env) return;
  auto build = [&](const PhiFunction& g) -> std::shared_ptr<const GridEnvelope> {
    std::vector<std::vector<double>> axes(
        g.dim(), GridFunction::symmetric_axis(c.window_radius, cfg.env_axis_points));
    GridFunction grid =
        GridFunction::product(std::move(axes), [&](const Vec& xi) { return g(xi); });
    return std::make_shared<GridEnvelope>(std::move(grid));
  };
  try {
    c.phi_env = build(c.phi_minus);
    c.psi_env = c.psi_shared ? c.phi_env : build(c.psi_minus);
  } catch (const std::exception& e) {
    throw ConfigError("ball " + fmt_int(c.index) + ": envelope construction failed: " +
                      std::string(e.what()));
  }
}

// Certified lower bound for the greatest convex minorant of the sampled
// function: grid envelope minus its interpolation slack, capped by the direct
// sample value (the minorant never exceeds the function).
double conv_lower(const GridEnvelope& env, const PhiFunction& direct, const Vec& xi,
                  bool* contact) {
  if (contact) *contact = false;
  double base = kInf;
  ExtReal e = env.eval(xi);
  if (e.is_finite()) {
    double slack = env.slack_at(xi);
    base = std::isfinite(slack) ? std::max(0.0, e.value() - slack) : 0.0;
    if (contact) *contact = env.window_contact(xi);
  }
  return std::min(base, direct(xi).value());
}

struct CondEntry {
  int ctx = 0;  // position in the context vector
  Vec xi;
  double psi_val = 0;   // psi_B^-(xi)
  double a1_rhs = 0;    // phi_B^-(xi) + 1
  double conv_psi = 0;  // lower bound for conv(psi_B^-)(xi)
  double conv_phi = 0;  // lower bound for conv(phi_B^-)(xi)
  bool a1_eligible = false;
  bool m_eligible = false;
  bool m_contact = false;  // envelope value taken from a window-contact facet
};

double eligibility_gate(double threshold, double tol) {
  return threshold + tol * (1.0 + threshold);
}

std::vector<CondEntry> build_entries(std::vector<BallContext>& ctxs, const ConditionConfig& cfg,
                                     bool with_m) {
  std::vector<CondEntry> out;
  for (size_t k = 0; k < ctxs.size(); ++k) {
    BallContext& c = ctxs[k];
    if (with_m) ensure_envelopes(c, cfg);
    double gate = eligibility_gate(c.threshold, cfg.tol);
    for (const Vec& xi : c.probes) {
      CondEntry e;
      e.ctx = static_cast<int>(k);
      e.xi = xi;
      e.psi_val = c.psi_minus(xi).value();
      e.a1_rhs = c.phi_minus(xi).value() + 1.0;
      e.a1_eligible = e.psi_val <= gate;
      if (with_m) {
        e.conv_psi = conv_lower(*c.psi_env, c.psi_minus, xi, nullptr);
        e.conv_phi = conv_lower(*c.phi_env, c.phi_minus, xi, &e.m_contact);
        e.m_eligible = e.conv_psi <= gate;
      }
      out.push_back(std::move(e));
    }
  }
  return out;
}

struct SweepResult {
  bool pass = true;
  long eligible = 0, checked = 0;
  std::optional<Witness> worst;
};

// One pass over the entries at a fixed beta: lhs = phi_B^+(beta xi) against a
// per-entry right-hand side, restricted to eligible entries.
SweepResult sweep(const std::vector<BallContext>& ctxs, const std::vector<CondEntry>& entries,
                  double beta, double tol, const std::function<bool(const CondEntry&)>& eligible,
                  const std::function<double(const CondEntry&)>& rhs_of) {
  SweepResult r;
  for (const CondEntry& e : entries) {
    ++r.checked;
    if (!eligible(e)) continue;
    ++r.eligible;
    const BallContext& c = ctxs[e.ctx];
    double lhs = c.phi_plus(scaled(beta, e.xi)).value();
    double rhs = rhs_of(e);
    if (!holds_leq(lhs, rhs, tol)) {
      r.pass = false;
      keep_worst(r.worst, make_witness(c.index, c.ball, e.xi, beta, lhs, rhs));
    }
  }
  return r;
}

std::string ball_line(const BallContext& c) {
  std::string s = "ball=" + fmt_int(c.index) + " center=" + fmt_vec(c.ball.center) +
                  " r=" + fmt_num(c.ball.radius) + " mu=" + fmt_num(c.mu) +
                  " K/mu=" + fmt_num(c.threshold) + " probes=" +
                  fmt_int(static_cast<long long>(c.probes.size())) +
                  " window=" + fmt_num(c.window_radius);
  if (!c.all_saturated) s += " saturated=no";
  if (c.phi_env) {
    s += " env_slack=" + fmt_num(c.phi_env->max_slack());
    if (c.phi_env->perturbed()) s += " env_perturb=" + fmt_num(c.phi_env->perturb_eps());
  }
  return s;
}

void finish_grid_verdict(ConditionCertificate& cert) {
  cert.verdict = Verdict::Fail;
  for (const BetaOutcome& o : cert.beta_outcomes) {
    if (o.pass) {
      cert.verdict = Verdict::Pass;
      cert.beta = o.beta;
      break;
    }
  }
  if (cert.verdict == Verdict::Fail) {
    for (const BetaOutcome& o : cert.beta_outcomes) {
      if (o.witness) {
        cert.witness = o.witness;
        break;
      }
    }
  }
}

enum class LocalForm { A1, M };

ConditionCertificate run_local_condition(const char* name, LocalForm form,
                                         const SpatialPhiFunction& phi,
                                         const ConditionConfig& cfg_in) {
  ConditionConfig cfg = resolve_config(phi, cfg_in, true);
  std::vector<BallContext> ctxs = build_contexts(phi, cfg);
  std::vector<CondEntry> entries = build_entries(ctxs, cfg, form == LocalForm::M);

  ConditionCertificate cert;
  cert.condition = name;
  cert.sampler_record = cfg.sampler.record(phi.space_dim());

  auto eligible = [form](const CondEntry& e) {
    return form == LocalForm::M ? e.m_eligible : e.a1_eligible;
  };
  auto rhs_of = [form](const CondEntry& e) {
    return form == LocalForm::M ? e.conv_phi + 1.0 : e.a1_rhs;
  };

  long total_eligible = 0, contacts = 0;
  for (const CondEntry& e : entries) {
    if (!eligible(e)) continue;
    ++total_eligible;
    if (form == LocalForm::M && e.m_contact) ++contacts;
  }

  for (double beta : cfg.beta_grid) {
    SweepResult r = sweep(ctxs, entries, beta, cfg.tol, eligible, rhs_of);
    BetaOutcome o;
    o.beta = beta;
    o.pass = r.pass;
    o.eligible = r.eligible;
    o.checked = r.checked;
    o.witness = r.worst;
    cert.beta_outcomes.push_back(std::move(o));
    if (cfg.record_instances) {
      for (const CondEntry& e : entries) {
        InstanceRecord rec;
        rec.ball_index = ctxs[e.ctx].index;
        rec.xi = e.xi;
        rec.beta = beta;
        rec.eligible = eligible(e);
        if (rec.eligible) {
          rec.lhs = ctxs[e.ctx].phi_plus(scaled(beta, e.xi)).value();
          rec.rhs = rhs_of(e);
          rec.pass = holds_leq(rec.lhs, rec.rhs, cfg.tol);
        }
        cert.instances.push_back(std::move(rec));
      }
    }
  }
  finish_grid_verdict(cert);

  cert.constants["K"] = cfg.K;
  cert.constants["balls"] = static_cast<double>(ctxs.size());
  cert.constants["probes.total"] = static_cast<double>(entries.size());
  cert.constants["eligible.total"] = static_cast<double>(total_eligible);
  double mu_min = kInf, mu_max = 0, slack_max = 0;
  bool all_sat = true;
  for (const BallContext& c : ctxs) {
    mu_min = std::min(mu_min, c.mu);
    mu_max = std::max(mu_max, c.mu);
    all_sat = all_sat && c.all_saturated;
    if (c.phi_env) slack_max = std::max(slack_max, c.phi_env->max_slack());
    cert.ball_lines.push_back(ball_line(c));
  }
  cert.constants["mu.min"] = mu_min;
  cert.constants["mu.max"] = mu_max;
  if (form == LocalForm::M) {
    cert.constants["env.max_slack"] = slack_max;
    cert.constants["window.contacts"] = static_cast<double>(contacts);
  }
  if (total_eligible == 0)
    cert.notes.push_back("vacuous: no probe met the eligibility constraint, so the verdict "
                         "carries no content");
  if (!all_sat)
    cert.notes.push_back("some probe directions did not saturate the constraint within the "
                         "radius search cap");
  if (form == LocalForm::M && contacts > 0)
    cert.notes.push_back(fmt_int(contacts) +
                         " eligible probes evaluate the envelope on a window-contact facet; "
                         "their minorant values may be biased upward by window truncation");
  return cert;
}

}  // namespace

// ---- ProbeSet / ConditionConfig ------------------------------------------

ProbeSet ProbeSet::defaults(int m) {
  ProbeSet p;
  p.directions = default_directions(m);
  for (int k = 0; k <= 8; ++k) p.levels.push_back(0.25 * std::pow(2.0, 0.5 * k));
  p.levels[4] = 1.0;  // exact midpoint instead of 0.25 * 2^2 rounding noise
  p.pair_levels = {1.0};
  p.alphas = {0.5, 0.25, 0.75};
  return p;
}

std::vector<double> ConditionConfig::default_beta_grid() {
  std::vector<double> g;
  for (int k = 0; k < 20; ++k) g.push_back(std::pow(2.0, -k));
  return g;
}

std::vector<Ball> ConditionConfig::dyadic_balls(const SpatialPhiFunction& phi, int j_min,
                                                int j_max) {
  if (!phi.valid()) throw ConfigError("a spatial phi-function is required");
  if (j_min < 0 || j_max < j_min) throw ConfigError("invalid dyadic ball range");
  Vec c = phi.domain().center();
  std::vector<Ball> out;
  for (int j = j_min; j <= j_max; ++j) {
    Ball b{c, std::pow(2.0, -j)};
    if (phi.measure(b) <= 1.0) out.push_back(b);
  }
  int j = j_max;
  while (out.empty() && j < j_max + 60) {
    ++j;
    Ball b{c, std::pow(2.0, -j)};
    if (phi.measure(b) <= 1.0) out.push_back(b);
  }
  if (out.empty()) throw ConfigError("no dyadic ball of measure <= 1 found");
  return out;
}

// ---- Witness / ConditionCertificate --------------------------------------

std::string Witness::describe() const {
  std::vector<std::string> parts;
  if (ball_index >= 0) {
    std::string b = "ball=" + fmt_int(ball_index);
    if (ball) b += " r=" + fmt_num(ball->radius);
    parts.push_back(b);
  }
  parts.push_back("xi=" + fmt_vec(xi));
  if (xi2) parts.push_back("xi2=" + fmt_vec(*xi2));
  if (alpha) parts.push_back("alpha=" + fmt_num(*alpha));
  parts.push_back("beta=" + fmt_num(beta));
  parts.push_back("lhs=" + fmt_num(lhs));
  parts.push_back("rhs=" + fmt_num(rhs));
  parts.push_back("viol=" + fmt_num(violation));
  return "(" + join(parts, ", ") + ")";
}

std::string ConditionCertificate::verdict_line() const {
  switch (verdict) {
    case Verdict::Pass:
      return "PASS beta=" + (beta ? fmt_num(*beta) : std::string("n/a"));
    case Verdict::Fail:
      return "FAIL witness=" + (witness ? witness->describe() : std::string("(none)"));
    case Verdict::OutOfScope:
      return "OUT-OF-SCOPE " + (notes.empty() ? std::string("not covered") : notes.front());
    case Verdict::ConfigErr:
      return "CONFIG-ERROR " +
             (notes.empty() ? std::string("invalid configuration") : notes.front());
  }
  return "?";
}

std::string ConditionCertificate::report() const {
  std::string out;
  out += "condition: " + condition + "\n";
  out += "verdict: " + std::string(verdict_name(verdict)) + "\n";
  if (beta) out += "beta: " + fmt_num(*beta) + "\n";
  if (!sampler_record.empty()) out += "sampler: " + sampler_record + "\n";
  if (!constants.empty()) {
    out += "constants:\n";
    for (const auto& [key, val] : constants) out += "  " + key + ": " + fmt_num(val) + "\n";
  }
  if (!ball_lines.empty()) {
    out += "balls:\n";
    for (const std::string& l : ball_lines) out += "  " + l + "\n";
  }
  if (!beta_outcomes.empty()) {
    out += "beta-grid:\n";
    for (const BetaOutcome& o : beta_outcomes) {
      out += "  beta=" + fmt_num(o.beta) + " pass=" + (o.pass ? "yes" : "no") +
             " eligible=" + fmt_int(o.eligible) + " checked=" + fmt_int(o.checked);
      if (o.witness) out += " worst=" + o.witness->describe();
      out += "\n";
    }
  }
  if (witness) out += "witness: " + witness->describe() + "\n";
  if (!notes.empty()) {
    out += "notes:\n";
    for (const std::string& n : notes) out += "  - " + n + "\n";
  }
  if (!instances.empty())
    out += "instances: " + fmt_int(static_cast<long long>(instances.size())) + "\n";
  out += "verdict-line: " + verdict_line() + "\n";
  return out;
}

// ---- (A0) ----------------------------------------------------------------

ConditionCertificate check_a0(const SpatialPhiFunction& phi, const ConditionConfig& cfg_in) {
  ConditionConfig cfg = resolve_config(phi, cfg_in, false);
  std::vector<Vec> xs = phi.domain_samples(cfg.sampler);
  std::vector<Vec> dirs;
  for (const Vec& d : cfg.probe.directions) dirs.push_back(scaled(1.0 / norm2(d), d));

  ConditionCertificate cert;
  cert.condition = "a0";
  cert.sampler_record = cfg.sampler.record(phi.space_dim());
  cert.constants["x-samples"] = static_cast<double>(xs.size());
  cert.constants["directions"] = static_cast<double>(dirs.size());

  for (double beta : cfg.beta_grid) {
    BetaOutcome o;
    o.beta = beta;
    o.pass = true;
    for (const Vec& d : dirs) {
      double sup_small = 0, inf_large = kInf;
      Vec small = scaled(beta, d), large = scaled(1.0 / beta, d);
      for (const Vec& x : xs) {
        sup_small = std::max(sup_small, phi.eval(x, small).value());
        inf_large = std::min(inf_large, phi.eval(x, large).value());
      }
      o.checked += 2;
      o.eligible += 2;
      if (!holds_leq(sup_small, 1.0, cfg.tol)) {
        o.pass = false;
        keep_worst(o.witness, make_witness(-1, std::nullopt, d, beta, sup_small, 1.0));
      }
      if (!holds_leq(1.0, inf_large, cfg.tol)) {
        o.pass = false;
        keep_worst(o.witness, make_witness(-1, std::nullopt, d, beta, 1.0, inf_large));
      }
    }
    cert.beta_outcomes.push_back(std::move(o));
  }
  finish_grid_verdict(cert);
  return cert;
}

// ---- (Inc)_1 / (aInc)_1 --------------------------------------------------

ConditionCertificate check_inc1(const PhiFunction& phi, double beta, const ProbeSet& probe_in,
                                double tol) {
  if (!phi.valid()) throw ConfigError("a phi-function is required");
  if (!(beta > 0) || beta > 1) throw ConfigError("beta must lie in (0, 1]");
  if (!(tol >= 0)) throw ConfigError("tol must be nonnegative");
  ProbeSet probe = resolve_probe(probe_in, phi.dim());
  std::vector<double> alphas = probe.alphas;
  alphas.push_back(0.05);
  alphas.push_back(1.0);
  std::sort(alphas.begin(), alphas.end());
  alphas.erase(std::unique(alphas.begin(), alphas.end()), alphas.end());

  ConditionCertificate cert;
  cert.condition = "inc1";
  cert.constants["beta"] = beta;
  BetaOutcome o;
  o.beta = beta;
  o.pass = true;
  for (const Vec& d : probe.directions) {
    for (double lv : probe.levels) {
      Vec xi = scaled(lv, d);
      ExtReal at_xi = phi(xi);
      for (double a : alphas) {
        double lhs = phi(scaled(beta * a, xi)).value();
        double rhs = scale(a, at_xi).value();
        ++o.checked;
        ++o.eligible;
        if (!holds_leq(lhs, rhs, tol)) {
          o.pass = false;
          Witness w = make_witness(-1, std::nullopt, xi, beta, lhs, rhs);
          w.alpha = a;
          keep_worst(o.witness, w);
        }
      }
    }
  }
  cert.beta_outcomes.push_back(std::move(o));
  finish_grid_verdict(cert);
  return cert;
}

// ---- almost convexity ----------------------------------------------------

ConditionCertificate check_almost_convex(const PhiFunction& phi, const ConditionConfig& cfg_in) {
  if (!phi.valid()) throw ConfigError("a phi-function is required");
  if (!(cfg_in.tol >= 0)) throw ConfigError("tol must be nonnegative");
  std::vector<double> grid = normalized_beta_grid(cfg_in.beta_grid);
  ProbeSet probe = resolve_probe(cfg_in.probe, phi.dim());

  std::vector<Vec> pts;
  for (const Vec& d : probe.directions)
    for (double lv : probe.pair_levels) pts.push_back(scaled(lv, d));
  pts.push_back(zero_vec(phi.dim()));
  std::vector<ExtReal> vals;
  vals.reserve(pts.size());
  for (const Vec& p : pts) vals.push_back(phi(p));

  ConditionCertificate cert;
  cert.condition = "almost-convex";
  cert.constants["points"] = static_cast<double>(pts.size());

  for (double beta : grid) {
    BetaOutcome o;
    o.beta = beta;
    o.pass = true;
    for (size_t i = 0; i < pts.size(); ++i) {
      for (size_t j = i; j < pts.size(); ++j) {
        for (double a : probe.alphas) {
          Vec mix = lin(a, pts[i], 1.0 - a, pts[j]);
          double lhs = phi(scaled(beta, mix)).value();
          double rhs = (scale(a, vals[i]) + scale(1.0 - a, vals[j])).value();
          ++o.checked;
          ++o.eligible;
          if (!holds_leq(lhs, rhs, cfg_in.tol)) {
            o.pass = false;
            Witness w = make_witness(-1, std::nullopt, pts[i], beta, lhs, rhs);
            w.xi2 = pts[j];
            w.alpha = a;
            keep_worst(o.witness, w);
          }
        }
      }
    }
    cert.beta_outcomes.push_back(std::move(o));
  }
  finish_grid_verdict(cert);
  return cert;
}

// ---- almost convex => comparable with the convex minorant ----------------

ConditionCertificate certify_equivalence_conv(const PhiFunction& phi,
                                              const ConditionCertificate& almost_convex,
                                              const GridFunction& grid, double tol) {
  if (!phi.valid()) throw ConfigError("a phi-function is required");
  if (!(tol >= 0)) throw ConfigError("tol must be nonnegative");

  ConditionCertificate cert;
  cert.condition = "equiv-conv";
  if (!almost_convex.passed() || !almost_convex.beta) {
    cert.verdict = Verdict::Fail;
    cert.notes.push_back("almost-convexity certificate did not pass; comparability with the "
                         "convex minorant is not expected");
    if (almost_convex.witness) cert.witness = almost_convex.witness;
    return cert;
  }
  double beta_ac = *almost_convex.beta;
  int m = phi.dim();
  int i = 0;
  while ((1 << i) < m + 1) ++i;
  double beta_prime = std::pow(beta_ac, i);

  std::unique_ptr<GridEnvelope> env;
  try {
    env = std::make_unique<GridEnvelope>(grid);
  } catch (const std::exception& e) {
    throw ConfigError("envelope construction failed: " + std::string(e.what()));
  }

  BetaOutcome o;
  o.beta = beta_prime;
  o.pass = true;
  const std::vector<ExtReal>& env_vals = env->values();
  for (size_t k = 0; k < grid.size(); ++k) {
    const Vec& xi = grid.points[k];
    double fval = grid.values[k].value();
    double eval = env_vals[k].value();
    // minorant side: env <= phi at every grid point
    ++o.checked;
    ++o.eligible;
    if (!holds_leq(eval, fval, tol)) {
      o.pass = false;
      keep_worst(o.witness, make_witness(-1, std::nullopt, xi, beta_prime, eval, fval));
    }
    // contracted side: phi(beta' xi) <= env(xi) + slack
    double slack = grid.axes ? env->slack_at(xi) : 0.0;
    double rhs = std::isfinite(slack) ? eval + slack : kInf;
    double lhs = phi(scaled(beta_prime, xi)).value();
    ++o.checked;
    ++o.eligible;
    if (!holds_leq(lhs, rhs, tol)) {
      o.pass = false;
      keep_worst(o.witness, make_witness(-1, std::nullopt, xi, beta_prime, lhs, rhs));
    }
  }
  cert.beta_outcomes.push_back(std::move(o));
  finish_grid_verdict(cert);
  cert.constants["i"] = static_cast<double>(i);
  cert.constants["beta.ac"] = beta_ac;
  cert.constants["beta.prime"] = beta_prime;
  cert.constants["grid.points"] = static_cast<double>(grid.size());
  cert.constants["env.max_slack"] = env->max_slack();
  cert.notes.push_back("envelope: " + env->note());
  return cert;
}

// ---- (A1-Psi) / (M-Psi) --------------------------------------------------

ConditionCertificate check_a1(const SpatialPhiFunction& phi, const ConditionConfig& cfg) {
  return run_local_condition("a1", LocalForm::A1, phi, cfg);
}

ConditionCertificate check_m(const SpatialPhiFunction& phi, const ConditionConfig& cfg) {
  return run_local_condition("m", LocalForm::M, phi, cfg);
}

std::vector<PairedInstance> m_vs_a1_instances(const SpatialPhiFunction& phi,
                                              const ConditionConfig& cfg_in) {
  ConditionConfig cfg = resolve_config(phi, cfg_in, true);
  std::vector<BallContext> ctxs = build_contexts(phi, cfg);
  std::vector<CondEntry> entries = build_entries(ctxs, cfg, true);
  std::vector<PairedInstance> out;
  out.reserve(cfg.beta_grid.size() * entries.size());
  for (double beta : cfg.beta_grid) {
    for (const CondEntry& e : entries) {
      const BallContext& c = ctxs[e.ctx];
      PairedInstance p;
      p.ball_index = c.index;
      p.xi = e.xi;
      p.beta = beta;
      p.a1_eligible = e.a1_eligible;
      p.m_eligible = e.m_eligible;
      double lhs = c.phi_plus(scaled(beta, e.xi)).value();
      p.a1_lhs = p.m_lhs = lhs;
      p.a1_rhs = e.a1_rhs;
      p.m_rhs = e.conv_phi + 1.0;
      p.a1_pass = !p.a1_eligible || holds_leq(lhs, p.a1_rhs, cfg.tol);
      p.m_pass = !p.m_eligible || holds_leq(lhs, p.m_rhs, cfg.tol);
      out.push_back(std::move(p));
    }
  }
  return out;
}

// ---- (A1) => (M) constant chain ------------------------------------------

ConditionCertificate a1_implies_m_chain(const SpatialPhiFunction& phi,
                                        const ConditionCertificate& a1,
                                        const ConditionConfig& cfg_in) {
  ConditionCertificate cert;
  cert.condition = "a1-implies-m-chain";
  if (cfg_in.psi.valid()) {
    cert.verdict = Verdict::OutOfScope;
    cert.notes.push_back("the constraint integrand psi differs from phi; the constant chain "
                         "is only established for psi = phi");
    return cert;
  }
  ConditionConfig cfg = resolve_config(phi, cfg_in, true);
  if (!a1.passed() || !a1.beta) {
    cert.verdict = Verdict::Fail;
    cert.notes.push_back("the (A1) certificate did not pass; the chain has no scale to start "
                         "from");
    if (a1.witness) cert.witness = a1.witness;
    return cert;
  }
  const double beta_a1 = *a1.beta;
  const int m = phi.vec_dim();
  int i = 0;
  while ((1 << i) < m + 1) ++i;
  const double beta_ac = 0.125;  // 1/(2C) with C = 4 from the gauge-minorant bound
  const double beta_prime = std::pow(beta_ac, i);
  const double beta_final = cfg.K / (cfg.K + 1.0) * beta_a1 * beta_prime;
  const double tol = cfg.tol;

  std::vector<BallContext> ctxs = build_contexts(phi, cfg);

  // chain point pool: low / unit / high level per direction, plus the origin
  std::vector<double> chain_levels = {cfg.probe.levels.front(),
                                      cfg.probe.levels[cfg.probe.levels.size() / 2],
                                      cfg.probe.levels.back()};
  std::sort(chain_levels.begin(), chain_levels.end());
  chain_levels.erase(std::unique(chain_levels.begin(), chain_levels.end()),
                     chain_levels.end());

  double s_min = kInf, s_max = 0;
  double ac_empirical = kInf;
  bool all_ok = true;
  std::optional<Witness> worst;
  BetaOutcome final_outcome;
  final_outcome.beta = beta_final;
  final_outcome.pass = true;

  for (BallContext& c : ctxs) {
    const double s = cfg.K / c.mu + 1.0;
    s_min = std::min(s_min, s);
    s_max = std::max(s_max, s);
    MinorantPair pair;
    try {
      pair = build_minorant_pair(c.phi_plus, beta_a1, s);
    } catch (const std::exception& e) {
      throw ConfigError("ball " + fmt_int(c.index) + ": gauge construction failed: " +
                        std::string(e.what()));
    }
    const PhiFunction& Ms = pair.minorant;

    std::vector<Vec> pts;
    for (size_t di = 0; di < cfg.probe.directions.size(); ++di)
      for (double lv : chain_levels)
        pts.push_back(scaled(lv * c.sat_radius[di], cfg.probe.directions[di]));
    pts.push_back(zero_vec(m));
    std::vector<ExtReal> ms_vals;
    ms_vals.reserve(pts.size());
    for (const Vec& p : pts) ms_vals.push_back(Ms(p));

    bool sandwich_ok = true, level_ok = true, w4_ok = true, jensen_ok = true, final_ok = true;
    const double gate = eligibility_gate(c.threshold, tol);

    // (a) M_s <= (1 + 1/K) phi_B^- + 1 everywhere on the probe set
    for (const Vec& xi : c.probes) {
      double lhs = Ms(xi).value();
      double rhs = (1.0 + 1.0 / cfg.K) * c.phi_minus(xi).value() + 1.0;
      if (!holds_leq(lhs, rhs, tol)) {
        sandwich_ok = false;
        keep_worst(worst, make_witness(c.index, c.ball, xi, beta_a1, lhs, rhs));
      }
    }

    // (b) eligible probes land in the sublevel set: phi_B^+(beta xi) <= s and
    //     gauge <= 1
    for (const Vec& xi : c.probes) {
      if (c.phi_minus(xi).value() > gate) continue;
      double up = c.phi_plus(scaled(beta_a1, xi)).value();
      if (!holds_leq(up, s, tol)) {
        level_ok = false;
        keep_worst(worst, make_witness(c.index, c.ball, xi, beta_a1, up, s));
      }
      double g = pair.set->gauge(xi);
      if (!holds_leq(g, 1.0, std::max(tol, 1e-9))) {
        level_ok = false;
        keep_worst(worst, make_witness(c.index, c.ball, xi, beta_a1, g, 1.0));
      }
    }

    // (c) M_s is almost convex with the proof constant 1/8
    BruteResult br = almost_convex_bruteforce(Ms, pts, cfg.probe.alphas, beta_ac, tol);
    if (!br.pass) {
      w4_ok = false;
      Witness w = make_witness(c.index, c.ball, br.worst.xi, beta_ac, br.worst.lhs,
                               br.worst.rhs);
      w.xi2 = br.worst.xi2;
      w.alpha = br.worst.alpha;
      keep_worst(worst, w);
    }
    // empirically largest passing dyadic beta on a thinned pool
    std::vector<Vec> thin;
    for (size_t di = 0; di < cfg.probe.directions.size(); di += 4)
      for (double lv : chain_levels)
        thin.push_back(scaled(lv * c.sat_radius[di], cfg.probe.directions[di]));
    thin.push_back(zero_vec(m));
    double ball_ac = 0;
    for (double cand : {1.0, 0.5, 0.25, 0.125}) {
      if (almost_convex_bruteforce(Ms, thin, cfg.probe.alphas, cand, tol).pass) {
        ball_ac = cand;
        break;
      }
    }
    ac_empirical = std::min(ac_empirical, ball_ac);

    // (d) iterated mixing: M_s(beta' sum alpha_j xi_j) <= sum alpha_j M_s(xi_j)
    //     over m+1-point combinations
    Rng rng(9001 + 17 * static_cast<std::uint64_t>(c.index));
    const int picks = m + 1;
    for (int t = 0; t < 40; ++t) {
      std::vector<int> idx(picks);
      std::vector<double> w(picks);
      double total = 0;
      for (int j = 0; j < picks; ++j) {
        idx[j] = rng.index(static_cast<int>(pts.size()));
        w[j] = 0.2 + rng.uniform();
        total += w[j];
      }
      Vec mix = zero_vec(m);
      ExtReal rhs_e = 0.0;
      for (int j = 0; j < picks; ++j) {
        w[j] /= total;
        mix = lin(1.0, mix, w[j], pts[idx[j]]);
        rhs_e += scale(w[j], ms_vals[idx[j]]);
      }
      double lhs = Ms(scaled(beta_prime, mix)).value();
      if (!holds_leq(lhs, rhs_e.value(), tol)) {
        jensen_ok = false;
        keep_worst(worst,
                   make_witness(c.index, c.ball, mix, beta_prime, lhs, rhs_e.value()));
      }
    }

    // (e) the final (M) inequality at (K/(K+1)) beta beta'
    ensure_envelopes(c, cfg);
    for (const Vec& xi : c.probes) {
      double cpsi = conv_lower(*c.psi_env, c.psi_minus, xi, nullptr);
      if (cpsi > gate) continue;
      double lhs = c.phi_plus(scaled(beta_final, xi)).value();
      double rhs = conv_lower(*c.phi_env, c.phi_minus, xi, nullptr) + 1.0;
      final_outcome.checked += 1;
      final_outcome.eligible += 1;
      if (!holds_leq(lhs, rhs, tol)) {
        final_ok = false;
        Witness w = make_witness(c.index, c.ball, xi, beta_final, lhs, rhs);
        keep_worst(worst, w);
        keep_worst(final_outcome.witness, w);
      }
    }

    bool ball_ok = sandwich_ok && level_ok && w4_ok && jensen_ok && final_ok;
    all_ok = all_ok && ball_ok;
    final_outcome.pass = final_outcome.pass && final_ok;
    auto flag = [](bool ok) { return ok ? std::string("ok") : std::string("FAIL"); };
    cert.ball_lines.push_back(ball_line(c) + " s=" + fmt_num(s) + " sandwich=" +
                              flag(sandwich_ok) + " level-set=" + flag(level_ok) +
                              " w4(1/8)=" + flag(w4_ok) + " mix=" + flag(jensen_ok) +
                              " final=" + flag(final_ok) + " ac_emp=" + fmt_num(ball_ac));
  }

  cert.sampler_record = cfg.sampler.record(phi.space_dim());
  cert.beta_outcomes.push_back(final_outcome);
  cert.constants["K"] = cfg.K;
  cert.constants["beta.a1"] = beta_a1;
  cert.constants["i"] = static_cast<double>(i);
  cert.constants["beta.ac"] = beta_ac;
  cert.constants["beta.ac.empirical"] = ac_empirical;
  cert.constants["beta.prime"] = beta_prime;
  cert.constants["beta.final"] = beta_final;
  cert.constants["s.min"] = s_min;
  cert.constants["s.max"] = s_max;
  if (all_ok) {
    cert.verdict = Verdict::Pass;
    cert.beta = beta_final;
  } else {
    cert.verdict = Verdict::Fail;
    cert.witness = worst;
  }
  return cert;
}

// ---- Jensen --------------------------------------------------------------

ConditionCertificate jensen_check(const SpatialPhiFunction& phi, const VectorField& f,
                                  const Ball& ball, double beta, const SamplerSpec& sampler,
                                  double tol, bool plus_one) {
  if (!phi.valid()) throw ConfigError("a spatial phi-function is required");
  if (!(beta > 0) || beta > 1) throw ConfigError("beta must lie in (0, 1]");
  if (!(tol >= 0)) throw ConfigError("tol must be nonnegative");
  f.validate();
  if (f.space_dim != phi.space_dim() || f.vec_dim != phi.vec_dim())
    throw ConfigError("field dimensions do not match phi");
  double mu = phi.measure(ball);
  if (!(mu > 0)) throw ConfigError("ball has zero measure in the domain");
  if (mu > 1.0 + 1e-9) throw ConfigError("ball measure " + fmt_num(mu) + " exceeds 1");
  for (const FieldSample& smp : f.samples)
    if (norm2(vdiff(smp.x, ball.center)) > ball.radius * (1.0 + 1e-9))
      throw ConfigError("field sample outside the ball");
  ExtReal rho = modular(phi, f);
  if (!(rho.value() <= 1.0 + tol))
    throw ConfigError("modular of the field exceeds 1 (" + fmt_num(rho.value()) + ")");

  double denom = f.total_weight();
  Vec avg = f.average();
  PhiFunction plus = phi.ball_sup(ball, sampler);
  double lhs = plus(scaled(beta, avg)).value();
  double rhs = rho.value() / denom + (plus_one ? 1.0 : 0.0);

  ConditionCertificate cert;
  cert.condition = "jensen";
  cert.sampler_record = sampler.record(phi.space_dim());
  cert.constants["mu"] = mu;
  cert.constants["rho"] = rho.value();
  cert.constants["weight.total"] = denom;
  cert.constants["lhs"] = lhs;
  cert.constants["rhs"] = rhs;
  if (std::fabs(denom - mu) > 1e-6 * mu)
    cert.notes.push_back("field weights sum to " + fmt_num(denom) + " against ball measure " +
                         fmt_num(mu) + "; the discrete average uses the field weights");
  BetaOutcome o;
  o.beta = beta;
  o.checked = o.eligible = 1;
  o.pass = holds_leq(lhs, rhs, tol);
  if (!o.pass) o.witness = make_witness(-1, ball, avg, beta, lhs, rhs);
  cert.beta_outcomes.push_back(std::move(o));
  finish_grid_verdict(cert);
  return cert;
}

ConditionCertificate jensen_almost_convex(const PhiFunction& phi,
                                          const std::vector<double>& weights,
                                          const std::vector<Vec>& points, double beta,
                                          double tol) {
  if (!phi.valid()) throw ConfigError("a phi-function is required");
  if (!(beta > 0) || beta > 1) throw ConfigError("beta must lie in (0, 1]");
  if (!(tol >= 0)) throw ConfigError("tol must be nonnegative");
  if (weights.empty() || weights.size() != points.size())
    throw ConfigError("weights and points must be nonempty and of equal length");
  double total = 0;
  for (double w : weights) {
    if (!(w >= 0) || !std::isfinite(w)) throw ConfigError("weights must be nonnegative");
    total += w;
  }
  if (!(total > 0)) throw ConfigError("weights must not all vanish");
  for (const Vec& p : points)
    if (static_cast<int>(p.size()) != phi.dim())
      throw ConfigError("point dimension does not match phi");

  Vec mix = zero_vec(phi.dim());
  ExtReal rhs_e = 0.0;
  for (size_t j = 0; j < points.size(); ++j) {
    double a = weights[j] / total;
    mix = lin(1.0, mix, a, points[j]);
    rhs_e += scale(a, phi(points[j]));
  }
  double lhs = phi(scaled(beta, mix)).value();
  double rhs = rhs_e.value();

  ConditionCertificate cert;
  cert.condition = "jensen-discrete";
  cert.constants["points"] = static_cast<double>(points.size());
  cert.constants["lhs"] = lhs;
  cert.constants["rhs"] = rhs;
  BetaOutcome o;
  o.beta = beta;
  o.checked = o.eligible = 1;
  o.pass = holds_leq(lhs, rhs, tol);
  if (!o.pass) o.witness = make_witness(-1, std::nullopt, mix, beta, lhs, rhs);
  cert.beta_outcomes.push_back(std::move(o));
  finish_grid_verdict(cert);
  return cert;
}

// ---- "+1" form vs range-restricted form under (A0) -----------------------

ConditionCertificate check_azero_reduction(const SpatialPhiFunction& phi,
                                           const ConditionConfig& cfg_in) {
  ConditionConfig cfg = resolve_config(phi, cfg_in, true);
  ConditionCertificate cert;
  cert.condition = "azero-reduction";
  cert.sampler_record = cfg.sampler.record(phi.space_dim());

  ConditionCertificate a0 = check_a0(phi, cfg);
  if (!a0.passed() || !a0.beta) {
    cert.verdict = Verdict::Fail;
    cert.notes.push_back("the normalization condition (A0) fails; the two formulations need "
                         "not coincide");
    if (a0.witness) cert.witness = a0.witness;
    return cert;
  }
  const double beta0 = *a0.beta;
  const double tol = cfg.tol;

  std::vector<BallContext> ctxs = build_contexts(phi, cfg);
  std::vector<CondEntry> entries = build_entries(ctxs, cfg, true);
  for (const BallContext& c : ctxs) cert.ball_lines.push_back(ball_line(c));

  // range-restricted form: phi_B^+(beta xi) <= conv(phi_B^-)(xi) without the
  // +1, for conv(phi_B^-)(xi) in [1, K/mu(B)]
  auto range_eligible = [&](const CondEntry& e) {
    double gate = eligibility_gate(ctxs[e.ctx].threshold, tol);
    return e.conv_phi >= 1.0 - tol * 2.0 && e.conv_phi <= gate;
  };
  auto range_rhs = [](const CondEntry& e) { return e.conv_phi; };
  // "+1" form: the plain (M) instance predicate
  auto plus1_eligible = [&](const CondEntry& e) { return e.m_eligible; };
  auto plus1_rhs = [](const CondEntry& e) { return e.conv_phi + 1.0; };

  std::optional<double> beta_range, beta_plus1;
  long range_eligible_total = 0;
  for (const CondEntry& e : entries)
    if (range_eligible(e)) ++range_eligible_total;
  for (double beta : cfg.beta_grid) {
    SweepResult r = sweep(ctxs, entries, beta, tol, range_eligible, range_rhs);
    if (r.pass && !beta_range) beta_range = beta;
    SweepResult p = sweep(ctxs, entries, beta, tol, plus1_eligible, plus1_rhs);
    BetaOutcome o;
    o.beta = beta;
    o.pass = p.pass;
    o.eligible = p.eligible;
    o.checked = p.checked;
    o.witness = p.worst;
    cert.beta_outcomes.push_back(std::move(o));
    if (p.pass && !beta_plus1) beta_plus1 = beta;
  }

  cert.constants["beta.a0"] = beta0;
  cert.constants["range.eligible"] = static_cast<double>(range_eligible_total);
  bool ok = true;
  std::optional<Witness> worst;

  if (beta_range) {
    cert.constants["beta.range"] = *beta_range;
    // forward: range form at beta and (A0) at beta0 imply the "+1" form at
    // min(beta, beta0)^2
    double beta_star = std::min(*beta_range, beta0);
    double beta_fwd = beta_star * beta_star;
    cert.constants["beta.forward"] = beta_fwd;
    SweepResult fw = sweep(ctxs, entries, beta_fwd, tol, plus1_eligible, plus1_rhs);
    if (!fw.pass) {
      ok = false;
      if (fw.worst) keep_worst(worst, *fw.worst);
      cert.notes.push_back("forward transform failed: range form passes at beta=" +
                           fmt_num(*beta_range) + " but the +1 form fails at beta=" +
                           fmt_num(beta_fwd));
    }
  } else {
    cert.notes.push_back("range-restricted form fails for every beta in the grid");
  }
  if (beta_plus1) {
    cert.constants["beta.plus1"] = *beta_plus1;
    // backward: the "+1" form at beta implies the range form at beta/2
    double beta_bwd = 0.5 * *beta_plus1;
    cert.constants["beta.backward"] = beta_bwd;
    SweepResult bw = sweep(ctxs, entries, beta_bwd, tol, range_eligible, range_rhs);
    if (!bw.pass) {
      ok = false;
      if (bw.worst) keep_worst(worst, *bw.worst);
      cert.notes.push_back("backward transform failed: +1 form passes at beta=" +
                           fmt_num(*beta_plus1) + " but the range form fails at beta=" +
                           fmt_num(beta_bwd));
    }
  } else {
    cert.notes.push_back("+1 form fails for every beta in the grid");
  }
  if (beta_range.has_value() != beta_plus1.has_value()) {
    ok = false;
    cert.notes.push_back("the two formulations disagree on this configuration");
  }
  if (!beta_range && !beta_plus1)
    cert.notes.push_back("both formulations fail; the equivalence holds vacuously");
  if (range_eligible_total == 0 && beta_range)
    cert.notes.push_back("vacuous: no probe lands in the [1, K/mu] range window");

  if (ok) {
    cert.verdict = Verdict::Pass;
    if (beta_plus1)
      cert.beta = *beta_plus1;
    else if (beta_range)
      cert.beta = cert.constants["beta.forward"];
  } else {
    cert.verdict = Verdict::Fail;
    cert.witness = worst;
    if (!cert.witness) {
      for (const BetaOutcome& o : cert.beta_outcomes)
        if (o.witness) {
          cert.witness = o.witness;
          break;
        }
    }
  }
  return cert;
}

}  // namespace orlicz
