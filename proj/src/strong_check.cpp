#include "orlicz/strong_check.hpp"

#include <cmath>

#include "orlicz/text.hpp"

namespace orlicz {

std::vector<Vec> default_directions(int m) {
  std::vector<Vec> dirs;
  if (m == 1) {
    dirs.push_back({1.0});
    dirs.push_back({-1.0});
    return dirs;
  }
  if (m == 2) {
    for (int k = 0; k < 16; ++k) {
      double th = 2.0 * M_PI * k / 16.0;
      Vec d = {std::cos(th), std::sin(th)};
      // snap axis directions exactly
      for (double& c : d)
        if (std::abs(c) < 1e-15) c = 0.0;
      dirs.push_back(std::move(d));
    }
    return dirs;
  }
  // m = 3, 4: normalized sign patterns over {-1, 0, 1}^m, lexicographic.
  std::vector<int> idx(static_cast<size_t>(m), 0);
  int total = 1;
  for (int k = 0; k < m; ++k) total *= 3;
  for (int code = 0; code < total; ++code) {
    int c = code;
    Vec d(static_cast<size_t>(m));
    for (int k = 0; k < m; ++k) {
      d[static_cast<size_t>(k)] = static_cast<double>(c % 3 - 1);
      c /= 3;
    }
    double len = norm2(d);
    if (len == 0) continue;
    dirs.push_back(scaled(1.0 / len, d));
  }
  return dirs;
}

namespace {

std::vector<double> default_radii() {
  std::vector<double> r;
  for (int k = -16; k <= 16; k += 2) r.push_back(std::ldexp(1.0, k));
  return r;
}

}  // namespace

std::string StrongPhiReport::summary() const {
  auto line = [](const char* name, const AxiomResult& a) {
    std::string s = std::string(name) + ": " + (a.pass ? "pass" : "FAIL");
    if (!a.pass && !a.witness.empty()) s += " [" + a.witness + "]";
    return s;
  };
  return line("zero-limit", zero_limit) + "\n" + line("infinity-limit", infinity_limit) + "\n" +
         line("continuity", continuity) + "\n" + line("convexity", convexity);
}

StrongPhiReport check_strong_phi(const PhiFunction& phi, const StrongProbeSpec& spec) {
  const int m = phi.dim();
  StrongPhiReport rep;
  const auto dirs = spec.directions.empty() ? default_directions(m) : spec.directions;
  const auto radii = spec.radii.empty() ? default_radii() : spec.radii;
  const double tol = spec.tol;

  auto at = [&](const Vec& d, double r) {
    ++rep.evaluations;
    return phi(scaled(r, d));
  };

  // phi(0) = 0 exactly.
  {
    ExtReal z = phi(zero_vec(m));
    if (!(z == ExtReal(0.0))) {
      rep.zero_limit.pass = false;
      rep.zero_limit.witness = "phi(0) = " + to_string(z);
    }
  }

  for (const auto& d : dirs) {
    // -- zero limit: by convexity-with-zero the decay is at least linear;
    // accept phi(t_min d) below tol or below twice the linear extrapolation
    // from the smallest radius with a finite value.
    if (rep.zero_limit.pass) {
      double t_min = radii.front();
      ExtReal v0 = at(d, t_min);
      if (v0.is_infinite()) {
        rep.zero_limit.pass = false;
        rep.zero_limit.witness = "phi is infinite at " + fmt_num(t_min) + " * " + fmt_vec(d);
      } else if (v0.value() > tol) {
        double ref = HUGE_VAL;
        for (double r : radii) {
          ExtReal v = at(d, r);
          if (v.is_finite() && r > t_min) {
            ref = 2.0 * t_min / r * v.value();
            break;
          }
        }
        if (v0.value() > std::max(tol, ref)) {
          rep.zero_limit.pass = false;
          rep.zero_limit.witness = "phi(" + fmt_num(t_min) + " * " + fmt_vec(d) +
                                   ") = " + to_string(v0) + " exceeds decay bound " + fmt_num(ref);
        }
      }
    }

    // -- infinity limit: infinite value at the top radius, or genuinely
    // positive with the convexity-mandated doubling growth still active.
    if (rep.infinity_limit.pass) {
      double t_max = radii.back();
      ExtReal top = at(d, t_max);
      if (!top.is_infinite()) {
        ExtReal half = at(d, 0.5 * t_max);
        bool growing = top.value() > 0 && half.value() > 0 && top.value() >= 1.9 * half.value();
        if (!growing) {
          rep.infinity_limit.pass = false;
          rep.infinity_limit.witness = "phi(" + fmt_num(t_max) + " * " + fmt_vec(d) + ") = " +
                                       to_string(top) + ", phi(" + fmt_num(0.5 * t_max) + " * ...) = " +
                                       to_string(half) + ": growth stalled";
        }
      }
    }

    // -- continuity (monotone-escape reading): along each ray the finite
    // region is an initial segment and values are nondecreasing on it.
    if (rep.continuity.pass) {
      bool seen_inf = false;
      double prev = 0;
      for (double r : radii) {
        ExtReal v = at(d, r);
        if (v.is_infinite()) {
          seen_inf = true;
          continue;
        }
        if (seen_inf) {
          rep.continuity.pass = false;
          rep.continuity.witness =
              "finite value after an infinite one along " + fmt_vec(d) + " at radius " + fmt_num(r);
          break;
        }
        if (v.value() < prev - tol * (1 + prev)) {
          rep.continuity.pass = false;
          rep.continuity.witness = "radial decrease along " + fmt_vec(d) + " at radius " + fmt_num(r);
          break;
        }
        prev = v.value();
      }
    }
  }

  // -- convexity: cross-direction pairs at the pair levels plus radial pairs
  // along each ray; worst relative violation wins.
  double worst = 0;
  auto try_pair = [&](const Vec& x, const Vec& y) {
    ExtReal fx = phi(x), fy = phi(y);
    rep.evaluations += 2;
    for (double a : spec.alphas) {
      Vec mid = lin(a, x, 1 - a, y);
      ExtReal lhs = phi(mid);
      ++rep.evaluations;
      ExtReal rhs = scale(a, fx) + scale(1 - a, fy);
      if (leq_tol(lhs, rhs, tol * (1 + (rhs.is_finite() ? rhs.value() : 0)))) continue;
      double viol = rhs.is_finite() ? (lhs.value() - rhs.value()) / (1 + rhs.value()) : 0;
      if (rhs.is_infinite()) continue;  // leq_tol already passed in that case
      if (rep.convexity.pass || viol > worst) {
        rep.convexity.pass = false;
        worst = viol;
        rep.convexity_witness = ConvexityWitness{x, y, a, lhs.value(), rhs.value(), viol};
        rep.convexity.witness = "phi(" + fmt_num(a) + " * " + fmt_vec(x) + " + " + fmt_num(1 - a) +
                                " * " + fmt_vec(y) + ") = " + to_string(lhs) + " > " + to_string(rhs);
      }
    }
  };
  for (double lvl : spec.pair_levels)
    for (size_t i = 0; i < dirs.size(); ++i)
      for (size_t j = i + 1; j < dirs.size(); ++j)
        try_pair(scaled(lvl, dirs[i]), scaled(lvl, dirs[j]));
  for (const auto& d : dirs)
    for (size_t i = 0; i < radii.size(); ++i)
      for (size_t j = i + 1; j < radii.size(); ++j)
        try_pair(scaled(radii[i], d), scaled(radii[j], d));

  return rep;
}

}  // namespace orlicz
