/// @file field.hpp
/// Discretized vector fields, the modular, and the Luxemburg norm.
///
/// A VectorField is a quadrature view of v : Omega -> R^m: sample points with
/// measure weights.  The modular is the weighted sum of phi(x_i, v_i); sums
/// use Neumaier compensation so that refining a field by splitting weights at
/// fixed points reproduces the same modular to the last bit.
#pragma once

#include "orlicz/spatial.hpp"

namespace orlicz {

struct FieldSample {
  Vec x;
  Vec value;
  double weight = 0;  // measure of the chunk this sample represents
};

struct VectorField {
  int space_dim = 0;
  int vec_dim = 0;
  std::vector<FieldSample> samples;

  void validate() const;  // dims consistent, weights >= 0, something nonzero
  double total_weight() const;
  /// Weighted average of the sampled values (the discrete f_B).
  Vec average() const;

  /// v scaled by a constant.
  VectorField scaled_by(double c) const;

  /// Constant field v == value sampled over a ball with equal weights summing
  /// to mu(B).
  static VectorField constant_on_ball(const SpatialPhiFunction& phi, const Ball& b,
                                      const Vec& value, const SamplerSpec& spec);

  /// Pointwise field f(x) sampled over a ball, equal weights summing to mu(B).
  static VectorField on_ball(const SpatialPhiFunction& phi, const Ball& b,
                             const std::function<Vec(const Vec&)>& f, const SamplerSpec& spec);
};

/// rho_Phi(v) = sum w_i phi(x_i, v_i), compensated summation, inf-absorbing.
ExtReal modular(const SpatialPhiFunction& phi, const VectorField& v);

struct NormResult {
  enum class Status { Finite, Infinite, BracketExhausted };
  Status status = Status::Finite;
  double value = 0;
  int iterations = 0;
  std::string note;
};

/// Luxemburg norm inf{ lambda > 0 : rho(v / lambda) <= 1 } by bracketed
/// bisection to relative tolerance rel_tol.  Bracket growth/shrink caps at
/// 2^64; an exhausted upper bracket reports Infinite, an exhausted lower
/// bracket reports BracketExhausted with the cap as an upper bound.
NormResult luxemburg_norm(const SpatialPhiFunction& phi, const VectorField& v,
                          double rel_tol = 1e-9);

}  // namespace orlicz
