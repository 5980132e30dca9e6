#include "orlicz/vec.hpp"

#include <cmath>
#include <stdexcept>

namespace orlicz {

namespace {
void check_same(const Vec& a, const Vec& b) {
  if (a.size() != b.size()) throw std::invalid_argument("vec: dimension mismatch");
}
}  // namespace

double dot(const Vec& a, const Vec& b) {
  check_same(a, b);
  double s = 0;
  for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

double norm2(const Vec& a) { return std::sqrt(dot(a, a)); }

double norm_p(const Vec& a, double p) {
  if (p <= 0) throw std::invalid_argument("norm_p: p must be positive");
  double s = 0;
  for (double x : a) s += std::pow(std::abs(x), p);
  return std::pow(s, 1.0 / p);
}

double norm_inf(const Vec& a) {
  double s = 0;
  for (double x : a) s = std::max(s, std::abs(x));
  return s;
}

Vec zero_vec(int m) { return Vec(static_cast<size_t>(m), 0.0); }

Vec basis_vec(int m, int k) {
  Vec v = zero_vec(m);
  v.at(static_cast<size_t>(k)) = 1.0;
  return v;
}

Vec scaled(double c, const Vec& a) {
  Vec v = a;
  for (double& x : v) x *= c;
  return v;
}

Vec vsum(const Vec& a, const Vec& b) { return lin(1.0, a, 1.0, b); }
Vec vdiff(const Vec& a, const Vec& b) { return lin(1.0, a, -1.0, b); }

Vec lin(double a, const Vec& x, double b, const Vec& y) {
  check_same(x, y);
  Vec v(x.size());
  for (size_t i = 0; i < x.size(); ++i) v[i] = a * x[i] + b * y[i];
  return v;
}

bool vec_close(const Vec& a, const Vec& b, double tol) {
  if (a.size() != b.size()) return false;
  for (size_t i = 0; i < a.size(); ++i)
    if (std::abs(a[i] - b[i]) > tol) return false;
  return true;
}

}  // namespace orlicz
