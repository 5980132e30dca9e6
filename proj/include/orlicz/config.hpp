/// @file config.hpp
/// Analysis configs: a flat structured-text format ([section] headers,
/// key = value lines, '#' comments) describing a spatial phi-function, the
/// condition parameters, and the auxiliary grid/field/run settings.  Parsing
/// validates eagerly — unknown sections or keys are errors with line numbers
/// — and serialize() emits a canonical form that parses back to an equal
/// config.
#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "orlicz/conditions.hpp"
#include "orlicz/field.hpp"
#include "orlicz/spatial.hpp"

namespace orlicz {

/// One phi-function description.  x-independent families: power (p),
/// double-phase (p, q, a), directional-double-phase (p, q, a), indicator (r),
/// diag-quadratic (weights), min-of ([phi.k] children).  Spatial families:
/// var-double-phase (p, q_hi, q_slope, a0, A, alpha, x0, directional),
/// variable-power (p0, p_grad).
struct PhiSpec {
  std::string family;
  double p = 2;
  double q = 3;
  double a = 1;
  double r = 1;
  Vec weights;
  double q_hi = 3;
  double q_slope = 0;
  double a0 = 0;
  double A = 1;
  double alpha = 1;
  Vec x0;  // empty: box center
  bool directional = false;
  double p0 = 2;
  Vec p_grad;  // empty: zero
  std::vector<PhiSpec> parts;

  bool spatial() const {
    return family == "var-double-phase" || family == "variable-power";
  }
};

struct BallsSpec {
  std::string mode = "dyadic";  // dyadic | list | random
  int j_min = 1, j_max = 6;     // dyadic radii 2^-j
  std::vector<Ball> list;       // ball0 = cx .. r, ball1 = ...
  int count = 8;                // random
  double radius_min = 0.05, radius_max = 0.5;
};

struct ProbeCfg {
  int directions = 0;            // equal-angle count for m = 2; 0 = defaults
  std::vector<Vec> explicit_dirs;  // dir0 = ..., overrides the count
  std::vector<double> levels, pair_levels, alphas;  // empty = defaults
};

struct GridSpec {
  int axis_points = 33;
  double radius = 2;
};

struct FieldSpec {
  std::string kind = "constant";  // constant | random
  Vec value;                      // constant value; empty = zero
  int count = 0;                  // ball samples; 0 = sampler default
  double scale = 1;               // random amplitude
  bool normalize = true;          // halve random fields until modular <= 0.9
  std::optional<Ball> ball;       // default: first analysis ball
};

struct AnalysisConfig {
  // [space]
  int n = 2;
  Box box;  // empty = [-1, 1]^n
  double weight = 1;
  // [phi] / [psi]
  int m = 2;
  PhiSpec phi;
  std::optional<PhiSpec> psi;
  // [conditions]
  double K = 1;
  double tol = 1e-9;
  int beta_count = 20;
  double beta_start = 1, beta_ratio = 0.5;
  double inc1_beta = 1;
  int env_axis_points = 33;
  double env_radius = 0;
  int sampler_count = 0;
  bool record_instances = false;
  // [balls] / [probe] / [grid] / [field]
  BallsSpec balls;
  ProbeCfg probe;
  GridSpec grid;
  FieldSpec field;
  // [jensen] / [norm]
  double jensen_beta = 1;
  bool jensen_plus_one = true;
  bool norm_scan = false;
  double lambda_max = 16;
  int lambda_count = 2048;
  // [run]
  std::uint64_t seed = 4242;
};

AnalysisConfig parse_config_text(const std::string& text);
AnalysisConfig load_config(const std::string& path);

/// Canonical text form; parse_config_text(serialize_config(c)) reproduces c.
std::string serialize_config(const AnalysisConfig& cfg);

SpatialPhiFunction build_phi(const AnalysisConfig& cfg);
SpatialPhiFunction build_psi(const AnalysisConfig& cfg);  // invalid when absent

/// The xi-space restriction used by the non-spatial checkers: the family
/// itself when x-independent, otherwise frozen at the box center.
PhiFunction build_plain_phi(const AnalysisConfig& cfg);

ConditionConfig build_condition_config(const AnalysisConfig& cfg,
                                       const SpatialPhiFunction& phi);

/// The ball a field lives on: the explicit [field] ball when given, else the
/// first resolved analysis ball.
Ball resolve_field_ball(const AnalysisConfig& cfg, const SpatialPhiFunction& phi,
                        const ConditionConfig& ccfg);

VectorField build_field(const AnalysisConfig& cfg, const SpatialPhiFunction& phi,
                        const Ball& ball);

}  // namespace orlicz
