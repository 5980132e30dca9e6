/// @file rng.hpp
/// Deterministic sampling utilities.
///
/// Essential infimum / supremum surrogates and quadrature nodes use the Halton
/// sequence: it is reproducible with no state, and its prefix property means a
/// sample of size 2N contains the size-N sample, so refining the sampler can
/// only sharpen min/max estimates.  Randomized stress tests use mt19937_64
/// with a hand-rolled uniform mapping (53 high bits) so streams are identical
/// across standard libraries.
#pragma once

#include <cstdint>
#include <random>

#include "orlicz/vec.hpp"

namespace orlicz {

/// Van der Corput radical inverse in the given prime base, index >= 0.
double radical_inverse(std::uint64_t index, unsigned base);

/// d-dimensional Halton point (bases 2, 3, 5, 7); index 0 is the origin so
/// callers usually start at index 1.
Vec halton_point(std::uint64_t index, int d);

/// count Halton points mapped affinely into the box [lo, hi], starting from
/// sequence index start (>= 1 recommended).
std::vector<Vec> halton_box(int count, const Vec& lo, const Vec& hi, std::uint64_t start = 1);

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}

  /// Uniform in [0, 1).
  double uniform() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }

  double uniform(double a, double b) { return a + (b - a) * uniform(); }

  /// Uniform integer in [0, n).
  int index(int n) { return static_cast<int>(uniform() * n) % n; }

  /// Standard normal via Box-Muller (consumes two uniforms).
  double normal();

  Vec in_box(const Vec& lo, const Vec& hi);
  Vec on_sphere(int m);

 private:
  std::mt19937_64 eng_;
  bool have_spare_ = false;
  double spare_ = 0;
};

}  // namespace orlicz
