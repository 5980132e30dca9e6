/// @file conditions.hpp
/// Certified checkers for the harmonic-analysis conditions on anisotropic
/// generalized Orlicz integrands: the normalization condition (A0), radial
/// almost-increase, almost convexity, the local continuity conditions (A1)
/// and (M) relative to an auxiliary integrand Psi, the explicit constant
/// chain deriving (M) from (A1), and Jensen-type inequalities.
///
/// Every checker returns a ConditionCertificate: a machine-readable verdict
/// with the scale parameter beta it certifies, per-beta outcomes over the
/// search grid, derived constants, witnesses for failures, and a
/// deterministic plain-text report.  All sampling is seeded and recorded, so
/// identical configurations reproduce identical certificates byte for byte.
#pragma once

#include <map>
#include <optional>

#include "orlicz/envelope.hpp"
#include "orlicz/field.hpp"
#include "orlicz/spatial.hpp"

namespace orlicz {

struct ProbeSet {
  std::vector<Vec> directions;       // unit fan in argument space
  std::vector<double> levels;        // radial multipliers for single-point probes
  std::vector<double> pair_levels;   // radii for pair-based (convexity) probes
  std::vector<double> alphas;        // mixing weights
  static ProbeSet defaults(int m);
};

struct ConditionConfig {
  double K = 1.0;
  double tol = 1e-9;
  std::vector<double> beta_grid;  // descending; empty: 1, 1/2, ..., 2^-19
  std::vector<Ball> balls;        // empty: dyadic fallback around the domain center
  ProbeSet probe;                 // empty members: per-dimension defaults
  SamplerSpec sampler;
  /// Auxiliary integrand Psi for the constraint side; invalid handle: Psi = Phi.
  SpatialPhiFunction psi;
  int env_axis_points = 33;       // window grid resolution per axis
  double env_radius = 0;          // 0: auto (cover all probes)
  bool record_instances = false;  // keep per-instance tables in the certificate

  static std::vector<double> default_beta_grid();
  /// Dyadic ball fallback: radii 2^-1 .. 2^-J around the domain center,
  /// trimmed to measure <= 1.
  static std::vector<Ball> dyadic_balls(const SpatialPhiFunction& phi, int j_min = 1,
                                        int j_max = 6);
};

enum class Verdict { Pass, Fail, ConfigErr, OutOfScope };

struct Witness {
  int ball_index = -1;
  std::optional<Ball> ball;
  Vec xi;
  std::optional<Vec> xi2;
  std::optional<double> alpha;
  double beta = 1;
  double lhs = 0, rhs = 0;
  double violation = 0;  // (lhs - rhs) / (1 + rhs)
  std::string describe() const;
};

struct BetaOutcome {
  double beta = 1;
  bool pass = false;
  long eligible = 0, checked = 0;
  std::optional<Witness> witness;  // worst violation at this beta
};

struct InstanceRecord {
  int ball_index = -1;
  Vec xi;
  double beta = 1;
  bool eligible = false;
  double lhs = 0, rhs = 0;
  bool pass = true;
};

struct ConditionCertificate {
  std::string condition;
  Verdict verdict = Verdict::Fail;
  std::optional<double> beta;     // certified scale on Pass
  std::vector<BetaOutcome> beta_outcomes;
  std::map<std::string, double> constants;
  std::optional<Witness> witness; // headline witness (largest failing beta)
  std::string sampler_record;
  std::vector<std::string> notes;
  std::vector<std::string> ball_lines;
  std::vector<InstanceRecord> instances;  // populated when record_instances

  bool passed() const { return verdict == Verdict::Pass; }
  /// "PASS beta=<v>" / "FAIL witness=<tuple>" / "OUT-OF-SCOPE ..." one-liner.
  std::string verdict_line() const;
  /// Full deterministic key/value report.
  std::string report() const;
};

// ---- checkers ------------------------------------------------------------

/// (A0): a beta from the grid with sup_x phi(x, beta xi) <= 1 <= inf_x
/// phi(x, xi / beta) over unit-sphere probe directions and sampled x.
ConditionCertificate check_a0(const SpatialPhiFunction& phi, const ConditionConfig& cfg);

/// Radial almost-increase with constant 1 at scale beta: t -> phi(t d) / t
/// nondecreasing up to the factor 1/beta, over probe rays and radius pairs.
ConditionCertificate check_inc1(const PhiFunction& phi, double beta, const ProbeSet& probe,
                                double tol);

/// Almost convexity: largest grid beta with phi(beta (a xi + a' xi')) <=
/// a phi(xi) + a' phi(xi') over probe pairs.
ConditionCertificate check_almost_convex(const PhiFunction& phi, const ConditionConfig& cfg);

/// Consequence of almost convexity: phi(beta^i xi) <= conv(phi)(xi) <=
/// phi(xi) on a sample grid, i minimal with 2^i >= m + 1, beta from the
/// almost-convexity certificate.
ConditionCertificate certify_equivalence_conv(const PhiFunction& phi,
                                              const ConditionCertificate& almost_convex,
                                              const GridFunction& grid, double tol = 1e-9);

/// (A1-Psi): beta with phi_B^+(beta xi) <= phi_B^-(xi) + 1 whenever
/// psi_B^-(xi) <= K / mu(B), over the configured balls and probes.
ConditionCertificate check_a1(const SpatialPhiFunction& phi, const ConditionConfig& cfg);

/// (M-Psi): beta with phi_B^+(beta xi) <= conv(phi_B^-)(xi) + 1 whenever
/// conv(psi_B^-)(xi) <= K / mu(B); envelopes are grid minorants with slack
/// accounting (see the per-ball report lines).
ConditionCertificate check_m(const SpatialPhiFunction& phi, const ConditionConfig& cfg);

/// The explicit constant chain from an (A1) certificate to an (M)
/// certificate: per ball s = K/mu(B) + 1, the gauge minorant
/// min(phi_B^+(beta .), s max(1, ||.||_K)), its sandwich and almost-convexity
/// properties, and the final scale (K/(K+1)) beta beta' with beta' = (1/8)^i,
/// 2^i >= m + 1.  Refuses configurations with Psi != Phi (out of scope).
ConditionCertificate a1_implies_m_chain(const SpatialPhiFunction& phi,
                                        const ConditionCertificate& a1,
                                        const ConditionConfig& cfg);

/// Ball-Jensen inequality at scale beta:
/// phi_B^+(beta <f>_B) <= (1/mu(B)) integral_B phi(x, f) dmu (+ 1).
ConditionCertificate jensen_check(const SpatialPhiFunction& phi, const VectorField& f,
                                  const Ball& ball, double beta, const SamplerSpec& sampler,
                                  double tol, bool plus_one = true);

/// Discrete Jensen for almost convex phi: phi(beta sum_j alpha_j xi_j) <=
/// sum_j alpha_j phi(xi_j) with alpha from the weights.
ConditionCertificate jensen_almost_convex(const PhiFunction& phi,
                                          const std::vector<double>& weights,
                                          const std::vector<Vec>& points, double beta, double tol);

/// Under (A0), the "+1" form of (M) and the range-restricted form (no +1,
/// with conv(phi_B^-) confined to [1, K/mu(B)]) certify each other: a range
/// pass at beta yields a "+1" pass at min(beta, beta_a0)^2, and a "+1" pass
/// at beta yields a range pass at beta/2.  Verifies both transforms over the
/// configured balls and reports agreement.
ConditionCertificate check_azero_reduction(const SpatialPhiFunction& phi,
                                           const ConditionConfig& cfg);

// ---- instance-level access (shared machinery) ----------------------------

struct PairedInstance {
  int ball_index = -1;
  Vec xi;
  double beta = 1;
  bool a1_eligible = false, m_eligible = false;
  bool a1_pass = true, m_pass = true;
  double a1_lhs = 0, a1_rhs = 0, m_lhs = 0, m_rhs = 0;
};

/// Evaluate the (A1) and (M) instance predicates side by side on the same
/// probes; by construction every (M)-pass instance that is (A1)-eligible also
/// passes (A1) with the same beta, making the easy implication checkable
/// instance by instance.
std::vector<PairedInstance> m_vs_a1_instances(const SpatialPhiFunction& phi,
                                              const ConditionConfig& cfg);

}  // namespace orlicz
