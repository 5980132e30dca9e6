#include "orlicz/ext_real.hpp"

#include "orlicz/text.hpp"

namespace orlicz {

ExtReal scale(double c, ExtReal x) {
  if (c < 0.0 || std::isnan(c)) throw std::domain_error("scale: negative or NaN factor");
  if (c == 0.0) return ExtReal(0.0);
  return ExtReal(c * x.value());
}

ExtReal mul(ExtReal x, ExtReal y) {
  if (x.value() == 0.0 || y.value() == 0.0) return ExtReal(0.0);
  return ExtReal(x.value() * y.value());
}

ExtReal min(ExtReal a, ExtReal b) { return a.value() <= b.value() ? a : b; }
ExtReal max(ExtReal a, ExtReal b) { return a.value() >= b.value() ? a : b; }

bool leq_tol(ExtReal a, ExtReal b, double tol) {
  if (b.is_infinite()) return true;
  if (a.is_infinite()) return false;
  return a.value() <= b.value() + tol;
}

bool close_tol(ExtReal a, ExtReal b, double tol) {
  if (a.is_infinite() || b.is_infinite()) return a.value() == b.value();
  return std::abs(a.value() - b.value()) <= tol;
}

std::string to_string(ExtReal x) { return fmt_num(x.value()); }

}  // namespace orlicz
