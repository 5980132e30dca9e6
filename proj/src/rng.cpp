#include "orlicz/rng.hpp"

#include <cmath>
#include <stdexcept>

namespace orlicz {

namespace {
constexpr unsigned kBases[4] = {2, 3, 5, 7};
}

double radical_inverse(std::uint64_t index, unsigned base) {
  double inv = 1.0 / base;
  double place = inv;
  double out = 0.0;
  while (index > 0) {
    out += static_cast<double>(index % base) * place;
    index /= base;
    place *= inv;
  }
  return out;
}

Vec halton_point(std::uint64_t index, int d) {
  if (d < 1 || d > 4) throw std::invalid_argument("halton_point: d must be in 1..4");
  Vec p(static_cast<size_t>(d));
  for (int k = 0; k < d; ++k) p[k] = radical_inverse(index, kBases[k]);
  return p;
}

std::vector<Vec> halton_box(int count, const Vec& lo, const Vec& hi, std::uint64_t start) {
  if (lo.size() != hi.size()) throw std::invalid_argument("halton_box: box dims differ");
  int d = static_cast<int>(lo.size());
  std::vector<Vec> out;
  out.reserve(static_cast<size_t>(count));
  for (int i = 0; i < count; ++i) {
    Vec u = halton_point(start + static_cast<std::uint64_t>(i), d);
    Vec p(u.size());
    for (size_t k = 0; k < u.size(); ++k) p[k] = lo[k] + (hi[k] - lo[k]) * u[k];
    out.push_back(std::move(p));
  }
  return out;
}

double Rng::normal() {
  if (have_spare_) {
    have_spare_ = false;
    return spare_;
  }
  // Avoid log(0); uniform() < 1 already, shift away from 0.
  double u1 = uniform();
  if (u1 <= 0) u1 = 0x1.0p-53;
  double u2 = uniform();
  double r = std::sqrt(-2.0 * std::log(u1));
  double a = 2.0 * M_PI * u2;
  spare_ = r * std::sin(a);
  have_spare_ = true;
  return r * std::cos(a);
}

Vec Rng::in_box(const Vec& lo, const Vec& hi) {
  Vec p(lo.size());
  for (size_t k = 0; k < lo.size(); ++k) p[k] = uniform(lo[k], hi[k]);
  return p;
}

Vec Rng::on_sphere(int m) {
  while (true) {
    Vec v(static_cast<size_t>(m));
    for (double& x : v) x = normal();
    double n = norm2(v);
    if (n > 1e-12) return scaled(1.0 / n, v);
  }
}

}  // namespace orlicz
