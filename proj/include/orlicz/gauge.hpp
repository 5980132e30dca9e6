/// @file gauge.hpp
/// Minkowski gauges of sublevel sets and the gauge-based convex minorant.
///
/// For a Phi-function phi, a scale beta and a level s >= 1 the set
///
///   K = { xi : phi(beta xi) <= s }
///
/// is star-shaped around the origin whenever phi is radially non-decreasing,
/// which makes its Minkowski gauge computable by bisection along rays.  From
/// the gauge we assemble
///
///   gauge_norm(xi) = s * max(1, ||xi||_K)      (convex when K is convex)
///   minorant(xi)   = min(phi(beta xi), gauge_norm(xi))
///
/// the explicit convex-minorant surrogate used by the constant-chain checker.
#pragma once

#include <memory>
#include <string>

#include "orlicz/phi_function.hpp"

namespace orlicz {

class GaugeSet {
 public:
  /// Build the sublevel set K = { xi : phi(beta xi) <= s }.  Probes escape
  /// radii along a deterministic direction fan to bracket the set; throws
  /// std::runtime_error if K has empty interior along some direction or is
  /// unbounded.  Convexity of K (when phi is flagged convex) is spot-checked
  /// on midpoints of member pairs.
  GaugeSet(PhiFunction phi, double beta, double s, int directions = 0);

  int dim() const { return phi_.dim(); }
  double s() const { return s_; }
  double beta() const { return beta_; }
  const PhiFunction& phi() const { return phi_; }

  bool contains(const Vec& xi) const;
  double bounding_radius() const { return bounding_radius_; }
  double inradius() const { return inradius_; }
  bool convex_certified() const { return convex_certified_; }

  /// Minkowski gauge inf{ lambda > 0 : xi/lambda in K } by bisection;
  /// relative tolerance rel_tol, at most 80 halvings.
  double gauge(const Vec& xi, double rel_tol = 1e-11) const;

 private:
  PhiFunction phi_;
  double beta_, s_;
  double bounding_radius_ = 0, inradius_ = 0;
  bool convex_certified_ = false;
};

struct MinorantPair {
  std::shared_ptr<const GaugeSet> set;
  PhiFunction gauge_norm;  // s * max(1, gauge)
  PhiFunction minorant;    // min(phi(beta .), gauge_norm)
};

MinorantPair build_minorant_pair(const PhiFunction& phi, double beta, double s,
                                 int directions = 0);

}  // namespace orlicz
