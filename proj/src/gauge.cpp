#include "orlicz/gauge.hpp"

#include <cmath>
#include <stdexcept>

#include "orlicz/rng.hpp"
#include "orlicz/text.hpp"

namespace orlicz {

namespace {

std::vector<Vec> direction_fan(int m, int n) {
  std::vector<Vec> dirs;
  if (m == 1) {
    dirs.push_back({1.0});
    dirs.push_back({-1.0});
    return dirs;
  }
  for (int k = 0; k < m; ++k) {
    dirs.push_back(basis_vec(m, k));
    dirs.push_back(scaled(-1.0, basis_vec(m, k)));
  }
  if (m == 2) {
    for (int k = 0; k < n; ++k) {
      double th = 2.0 * M_PI * k / n;
      dirs.push_back({std::cos(th), std::sin(th)});
    }
  } else {
    // Halton cube mapped radially; deterministic and well spread enough for
    // bracketing purposes.
    std::uint64_t idx = 1;
    int added = 0;
    while (added < n) {
      Vec u = halton_point(idx++, m);
      Vec d(u.size());
      for (size_t i = 0; i < u.size(); ++i) d[i] = 2 * u[i] - 1;
      double len = norm2(d);
      if (len < 1e-3) continue;
      dirs.push_back(scaled(1.0 / len, d));
      ++added;
    }
  }
  return dirs;
}

}  // namespace

GaugeSet::GaugeSet(PhiFunction phi, double beta, double s, int directions)
    : phi_(std::move(phi)), beta_(beta), s_(s) {
  if (!(beta > 0)) throw std::invalid_argument("GaugeSet: beta must be positive");
  if (!(s >= 1) || !std::isfinite(s)) throw std::invalid_argument("GaugeSet: s must be finite and >= 1");
  const int m = phi_.dim();
  if (directions <= 0) directions = (m == 1) ? 2 : (m == 2 ? 64 : 128);
  const auto dirs = direction_fan(m, directions);

  std::vector<Vec> boundary;
  double rmin = HUGE_VAL, rmax = 0;
  for (const auto& d : dirs) {
    double t = 1.0;
    if (contains(scaled(t, d))) {
      int guard = 0;
      while (contains(scaled(2 * t, d))) {
        t *= 2;
        if (++guard > 200) throw std::runtime_error("GaugeSet: sublevel set unbounded along " + fmt_vec(d));
      }
      // boundary radius in [t, 2t]
      double lo = t, hi = 2 * t;
      for (int it = 0; it < 60; ++it) {
        double mid = 0.5 * (lo + hi);
        (contains(scaled(mid, d)) ? lo : hi) = mid;
      }
      t = lo;
    } else {
      int guard = 0;
      while (!contains(scaled(t / 2, d))) {
        t /= 2;
        if (++guard > 200)
          throw std::runtime_error("GaugeSet: empty interior along " + fmt_vec(d));
      }
      double lo = t / 2, hi = t;
      for (int it = 0; it < 60; ++it) {
        double mid = 0.5 * (lo + hi);
        (contains(scaled(mid, d)) ? lo : hi) = mid;
      }
      t = lo;
    }
    rmin = std::min(rmin, t);
    rmax = std::max(rmax, t);
    boundary.push_back(scaled(t, d));
  }
  inradius_ = rmin;
  bounding_radius_ = rmax * (1 + 1e-9);

  if (phi_.convex()) {
    // Convexity of K follows from convexity of phi; verify on a few midpoints
    // so a mis-flagged expression fails loudly here rather than subtly later.
    convex_certified_ = true;
    size_t step = std::max<size_t>(1, boundary.size() / 16);
    for (size_t i = 0; i < boundary.size(); i += step)
      for (size_t j = i + step; j < boundary.size(); j += step) {
        Vec midpoint = lin(0.5 * 0.99, boundary[i], 0.5 * 0.99, boundary[j]);
        if (!contains(midpoint))
          throw std::runtime_error("GaugeSet: convexity spot check failed at " + fmt_vec(midpoint));
      }
  }
}

bool GaugeSet::contains(const Vec& xi) const { return phi_(scaled(beta_, xi)) <= ExtReal(s_); }

double GaugeSet::gauge(const Vec& xi, double rel_tol) const {
  double len = norm2(xi);
  if (len == 0) return 0.0;
  double lo = 0.5 * len / bounding_radius_;  // |xi/lo| = 2R: certainly outside
  double hi = std::max(lo * 4, len / inradius_);
  int guard = 0;
  while (!contains(scaled(1.0 / hi, xi))) {
    hi *= 2;
    if (++guard > 200) throw std::runtime_error("GaugeSet: gauge bracket failed");
  }
  for (int it = 0; it < 80 && hi - lo > rel_tol * hi; ++it) {
    double mid = 0.5 * (lo + hi);
    (contains(scaled(1.0 / mid, xi)) ? hi : lo) = mid;
  }
  return hi;
}

MinorantPair build_minorant_pair(const PhiFunction& phi, double beta, double s, int directions) {
  auto set = std::make_shared<const GaugeSet>(phi, beta, s, directions);
  bool convex = phi.convex() && set->convex_certified();
  std::string label =
      "gauge-norm(s=" + fmt_num(s) + ",beta=" + fmt_num(beta) + "," + phi.describe() + ")";
  PhiFunction norm_part = PhiFunction::from_callable(
      phi.dim(),
      [set](const Vec& xi) { return ExtReal(set->s() * std::max(1.0, set->gauge(xi))); }, convex,
      label);
  MinorantPair out;
  out.set = set;
  out.gauge_norm = norm_part;
  out.minorant = PhiFunction::min_of({PhiFunction::scaled(phi, beta), norm_part});
  return out;
}

}  // namespace orlicz
