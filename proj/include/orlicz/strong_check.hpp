/// @file strong_check.hpp
/// Numerical audit of the strong Phi-function axioms along a deterministic
/// direction/radius probe grid:
///
///   zero    phi(0) = 0 and decay to 0 along every probed ray
///   grow    divergence to infinity along every probed ray
///   cont    no interior infinity gaps and radial monotonicity on rays
///   convex  midpoint/weighted convexity on probe pairs
///
/// The verdicts are per-axiom with explicit witnesses; convexity witnesses
/// pick the maximum relative violation over the scan (ties broken by scan
/// order) so that reported counterexamples are stable and meaningful.
#pragma once

#include <optional>
#include <string>

#include "orlicz/phi_function.hpp"

namespace orlicz {

struct StrongProbeSpec {
  std::vector<Vec> directions;   // empty: per-dimension default fan
  std::vector<double> radii;     // empty: 2^k, k = -16..16 step 2
  std::vector<double> pair_levels{1.0};  // radii used for cross-direction pairs
  std::vector<double> alphas{0.5, 0.25, 0.75};
  double tol = 1e-9;
};

struct AxiomResult {
  bool pass = true;
  std::string witness;  // human-readable locus of the worst/first violation
};

struct ConvexityWitness {
  Vec xi, xi2;
  double alpha = 0.5;
  double lhs = 0, rhs = 0, violation = 0;
};

struct StrongPhiReport {
  AxiomResult zero_limit, infinity_limit, continuity, convexity;
  std::optional<ConvexityWitness> convexity_witness;
  long evaluations = 0;
  bool all_pass() const {
    return zero_limit.pass && infinity_limit.pass && continuity.pass && convexity.pass;
  }
  std::string summary() const;
};

StrongPhiReport check_strong_phi(const PhiFunction& phi, const StrongProbeSpec& spec = {});

/// Default direction fan: +-1 (m=1), 16 equal angles starting at e1 (m=2),
/// normalized {-1,0,1}-combinations (m=3,4).
std::vector<Vec> default_directions(int m);

}  // namespace orlicz
