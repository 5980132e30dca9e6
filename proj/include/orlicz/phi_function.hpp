/// @file phi_function.hpp
/// Anisotropic Phi-functions of the vector argument, Phi : R^m -> [0, inf].
///
/// PhiFunction is an immutable value handle over a small expression tree.
/// Built-in families cover the integrands used throughout the test corpus:
///
///   power                    |xi|^p
///   double-phase             |xi|^p + a |xi|^q
///   directional-double-phase |xi|^p + a |xi_1|^q
///   linfty-indicator         0 on { ||xi||_r <= 1 }, inf outside (r in (0,1])
///   diag-quadratic           sum_i w_i xi_i^2
///   min-of-list              pointwise minimum
///   tabulated                table + multilinear interpolation, radially
///                            linear extension outside the table box
///
/// plus combinators scaled (xi -> Phi(beta xi)) and generic callables.  The
/// convexity flag is structural: true only when the construction guarantees a
/// convex function, never inferred numerically.
#pragma once

#include <functional>
#include <memory>
#include <string>

#include "orlicz/ext_real.hpp"
#include "orlicz/grid.hpp"
#include "orlicz/vec.hpp"

namespace orlicz {

class PhiExpr {
 public:
  virtual ~PhiExpr() = default;
  virtual int dim() const = 0;
  virtual ExtReal eval(const Vec& xi) const = 0;
  virtual bool convex() const { return false; }
  virtual std::string describe() const = 0;
};

class PhiFunction {
 public:
  PhiFunction() = default;
  explicit PhiFunction(std::shared_ptr<const PhiExpr> expr);

  bool valid() const { return static_cast<bool>(expr_); }
  int dim() const;
  ExtReal operator()(const Vec& xi) const;  // throws on dimension mismatch
  bool convex() const;
  std::string describe() const;
  const std::shared_ptr<const PhiExpr>& expr() const { return expr_; }

  // -- built-in families -------------------------------------------------
  static PhiFunction power(int m, double p);
  static PhiFunction double_phase(int m, double p, double q, double a);
  static PhiFunction directional_double_phase(int m, double p, double q, double a);
  static PhiFunction linf_indicator(int m, double r);
  static PhiFunction diag_quadratic(Vec weights);
  static PhiFunction min_of(std::vector<PhiFunction> parts);
  static PhiFunction tabulated(GridFunction table);

  // -- combinators -------------------------------------------------------
  /// xi -> inner(beta * xi); beta > 0.
  static PhiFunction scaled(PhiFunction inner, double beta);
  /// xi -> c * inner(xi); c >= 0 (0 * inf = 0).
  static PhiFunction times(double c, PhiFunction inner);
  /// Arbitrary callable; caller states convexity.
  static PhiFunction from_callable(int m, std::function<ExtReal(const Vec&)> f, bool convex,
                                   std::string label);

 private:
  std::shared_ptr<const PhiExpr> expr_;
};

}  // namespace orlicz
