/// @file ext_real.hpp
/// Arithmetic on the extended half-line [0, infinity].
///
/// Values of generalized Orlicz integrands live in [0, inf].  IEEE doubles
/// almost give us the right semantics for free; the exceptions are
/// 0 * inf (NaN in IEEE, 0 here, the measure-theoretic convention) and
/// accidental negative values, which indicate a logic error upstream.
#pragma once

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace orlicz {

class ExtReal {
 public:
  constexpr ExtReal() = default;
  constexpr ExtReal(double v) : v_(v) {}

  static constexpr ExtReal infinity() {
    return ExtReal(std::numeric_limits<double>::infinity());
  }

  bool is_finite() const { return std::isfinite(v_); }
  bool is_infinite() const { return std::isinf(v_); }

  /// Raw value; +inf for the infinite element.
  double value() const { return v_; }

  /// Finite value or throw; use where infinity means a bug.
  double finite() const {
    if (!is_finite()) throw std::domain_error("ExtReal: expected finite value");
    return v_;
  }

  friend bool operator==(ExtReal a, ExtReal b) { return a.v_ == b.v_; }
  friend bool operator!=(ExtReal a, ExtReal b) { return a.v_ != b.v_; }
  friend bool operator<(ExtReal a, ExtReal b) { return a.v_ < b.v_; }
  friend bool operator<=(ExtReal a, ExtReal b) { return a.v_ <= b.v_; }
  friend bool operator>(ExtReal a, ExtReal b) { return a.v_ > b.v_; }
  friend bool operator>=(ExtReal a, ExtReal b) { return a.v_ >= b.v_; }

  friend ExtReal operator+(ExtReal a, ExtReal b) { return ExtReal(a.v_ + b.v_); }

  ExtReal& operator+=(ExtReal o) {
    v_ += o.v_;
    return *this;
  }

 private:
  double v_ = 0.0;
};

/// c * x with the convention 0 * inf = 0.  Requires c >= 0.
ExtReal scale(double c, ExtReal x);

/// x * y with 0 * inf = 0 on either side.
ExtReal mul(ExtReal x, ExtReal y);

ExtReal min(ExtReal a, ExtReal b);
ExtReal max(ExtReal a, ExtReal b);

/// a <= b + tol, where an infinite b absorbs everything and an infinite a
/// only passes against an infinite b.  tol must be finite.
bool leq_tol(ExtReal a, ExtReal b, double tol);

/// |a - b| <= tol with inf == inf allowed, inf vs finite rejected.
bool close_tol(ExtReal a, ExtReal b, double tol);

/// Render as shortest round-trip-ish decimal; infinity renders as "inf".
std::string to_string(ExtReal x);

}  // namespace orlicz
