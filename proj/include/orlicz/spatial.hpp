/// @file spatial.hpp
/// Phi-functions with spatial dependence: phi(x, xi) on a box domain in R^n
/// carrying a weighted Lebesgue measure.
///
/// Essential infimum / supremum over a ball are approximated by extrema over
/// a deterministic Halton sample of the ball (plus its center).  Because the
/// Halton sequence has the prefix property, enlarging the sample count never
/// loses previously seen points, so phi_B^+ estimates grow and phi_B^-
/// estimates shrink monotonically under refinement.  All integrands here are
/// continuous in x, so the sampled extrema converge to the essential ones.
#pragma once

#include <cstdint>
#include <memory>
#include <string>

#include "orlicz/errors.hpp"
#include "orlicz/phi_function.hpp"

namespace orlicz {

struct Box {
  Vec lo, hi;
  int dim() const { return static_cast<int>(lo.size()); }
  Vec center() const;
  double volume() const;
  bool contains(const Vec& x, double tol = 0) const;
  void validate() const;
  std::string describe() const;
};

struct Ball {
  Vec center;
  double radius = 0;
  std::string describe() const;
};

struct SamplerSpec {
  int count = 0;          // halton points; 0 means 64 * space_dim
  std::uint64_t start = 1;  // first halton index (prefix property holds per start)
  bool include_center = true;
  int resolve_count(int n) const { return count > 0 ? count : 64 * n; }
  std::string record(int n) const;
};

class SpatialExpr {
 public:
  virtual ~SpatialExpr() = default;
  virtual int space_dim() const = 0;
  virtual int vec_dim() const = 0;
  virtual ExtReal eval(const Vec& x, const Vec& xi) const = 0;
  virtual PhiFunction freeze(const Vec& x) const = 0;
  virtual bool x_independent() const { return false; }
  virtual bool convex_in_xi() const = 0;
  virtual std::string describe() const = 0;
};

class SpatialPhiFunction {
 public:
  SpatialPhiFunction() = default;
  SpatialPhiFunction(Box domain, std::shared_ptr<const SpatialExpr> expr, double weight = 1.0);

  bool valid() const { return static_cast<bool>(expr_); }
  int space_dim() const;
  int vec_dim() const;
  const Box& domain() const { return domain_; }
  /// Constant density of the measure against Lebesgue.
  double weight() const { return weight_; }

  ExtReal eval(const Vec& x, const Vec& xi) const;
  PhiFunction freeze(const Vec& x) const;
  bool x_independent() const;
  bool convex_in_xi() const;
  std::string describe() const;

  /// mu(B intersect domain); closed form for balls inside the box, halton
  /// volume fraction otherwise.
  double measure(const Ball& b) const;
  double domain_measure() const;

  /// Deterministic sample of B intersect domain; first entry is the ball
  /// center when it lies in the domain and the spec asks for it.  Throws
  /// ConfigError when the intersection is (numerically) empty.
  std::vector<Vec> ball_samples(const Ball& b, const SamplerSpec& spec) const;

  /// Box corners + center + halton fill of the domain.
  std::vector<Vec> domain_samples(const SamplerSpec& spec) const;

  /// phi_B^- / phi_B^+ as a PhiFunction over xi (samples fixed at build time).
  PhiFunction ball_inf(const Ball& b, const SamplerSpec& spec) const;
  PhiFunction ball_sup(const Ball& b, const SamplerSpec& spec) const;

  // ---- factories --------------------------------------------------------
  static SpatialPhiFunction constant(Box domain, PhiFunction phi, double weight = 1.0);

  /// phi(x, xi) = |xi|^p(x), p(x) = p0 + p_grad . (x - box center), affine
  /// exponent; validated to stay >= 1 over the box.
  static SpatialPhiFunction variable_power(Box domain, int m, double p0, Vec p_grad,
                                           double weight = 1.0);

  struct DoublePhaseSpec {
    double p = 2;             // base exponent
    double q_hi = 3;          // top exponent, attained at x0
    double q_slope = 0;       // q(x) = max(p, q_hi - q_slope * |x - x0|)
    double a0 = 0;            // constant part of the weight
    double holder_const = 1;  // A in a(x) = a0 + A |x - x0|^alpha
    double holder_alpha = 1;  // alpha in (0, 1]
    Vec x0;                   // degeneracy point
    bool directional = false; // second term driven by |xi_1| instead of |xi|
  };
  /// Weighted double phase phi(x, xi) = |xi|^p + a(x) u^q(x).
  static SpatialPhiFunction double_phase(Box domain, int m, DoublePhaseSpec spec,
                                         double weight = 1.0);

 private:
  Box domain_;
  double weight_ = 1.0;
  std::shared_ptr<const SpatialExpr> expr_;
};

/// Sharp admissibility ratio for the weighted double phase family: the model
/// inequality q_hi / p <= 1 + alpha / n.  Returns q_hi/p - (1 + alpha/n); a
/// positive value means the family violates the admissibility threshold.
double double_phase_admissibility_gap(const SpatialPhiFunction::DoublePhaseSpec& spec, int n);

/// Euclidean ball volume in dimension n (1..3).
double ball_volume(int n, double r);

}  // namespace orlicz
