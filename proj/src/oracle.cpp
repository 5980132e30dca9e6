#include "orlicz/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

namespace orlicz {

namespace {

// Solve the (k x k) barycentric system by Gauss elimination with partial
// pivoting; returns false when a pivot falls below the singularity threshold.
bool solve_square(std::vector<Vec> a, Vec b, Vec* out) {
  const size_t k = b.size();
  for (size_t col = 0; col < k; ++col) {
    size_t piv = col;
    for (size_t r = col + 1; r < k; ++r)
      if (std::abs(a[r][col]) > std::abs(a[piv][col])) piv = r;
    if (std::abs(a[piv][col]) < 1e-12) return false;
    std::swap(a[piv], a[col]);
    std::swap(b[piv], b[col]);
    for (size_t r = 0; r < k; ++r) {
      if (r == col) continue;
      double f = a[r][col] / a[col][col];
      for (size_t c = col; c < k; ++c) a[r][c] -= f * a[col][c];
      b[r] -= f * b[col];
    }
  }
  for (size_t i = 0; i < k; ++i) b[i] /= a[i][i];
  *out = std::move(b);
  return true;
}

struct NormalizedSupport {
  std::vector<Vec> pts;  // finite-valued support, coordinates scaled to O(1)
  std::vector<double> vals;
  std::vector<int> ids;  // original indices
  Vec scale;             // per-axis divisor
};

NormalizedSupport normalize_support(const std::vector<Vec>& support,
                                    const std::vector<ExtReal>& values) {
  if (support.size() != values.size())
    throw std::invalid_argument("caratheodory: support/values size mismatch");
  if (support.empty()) throw std::invalid_argument("caratheodory: empty support");
  const size_t m = support.front().size();
  NormalizedSupport out;
  out.scale.assign(m, 1.0);
  for (size_t i = 0; i < support.size(); ++i) {
    if (support[i].size() != m) throw std::invalid_argument("caratheodory: mixed dimensions");
    if (!values[i].is_finite()) continue;
    for (size_t k = 0; k < m; ++k)
      out.scale[k] = std::max(out.scale[k], std::abs(support[i][k]));
    out.ids.push_back(static_cast<int>(i));
  }
  for (int id : out.ids) {
    Vec p = support[static_cast<size_t>(id)];
    for (size_t k = 0; k < m; ++k) p[k] /= out.scale[k];
    out.pts.push_back(std::move(p));
    out.vals.push_back(values[static_cast<size_t>(id)].value());
  }
  return out;
}

// Barycentric system for subset sel (size k) representing target q:
// rows = m coordinate equations + 1 normalization row.
bool barycentric(const std::vector<Vec>& pts, const std::vector<int>& sel, const Vec& q,
                 double tol, Vec* coeffs) {
  const size_t m = q.size();
  const size_t k = sel.size();
  if (k == 1) {
    double d = 0;
    for (size_t c = 0; c < m; ++c) d = std::max(d, std::abs(pts[static_cast<size_t>(sel[0])][c] - q[c]));
    if (d > tol) return false;
    *coeffs = {1.0};
    return true;
  }
  if (k == m + 1) {
    std::vector<Vec> a(k, Vec(k, 1.0));
    Vec b(k, 1.0);
    for (size_t c = 0; c < m; ++c) {
      for (size_t j = 0; j < k; ++j) a[c][j] = pts[static_cast<size_t>(sel[j])][c];
      b[c] = q[c];
    }
    if (!solve_square(std::move(a), std::move(b), coeffs)) return false;
  } else {
    // Underdetermined in points but overdetermined as a linear system:
    // solve least squares via normal equations and verify the residual.
    std::vector<Vec> rows;  // (m+1) x k design matrix
    for (size_t c = 0; c < m; ++c) {
      Vec row(k);
      for (size_t j = 0; j < k; ++j) row[j] = pts[static_cast<size_t>(sel[j])][c];
      rows.push_back(std::move(row));
    }
    rows.push_back(Vec(k, 1.0));
    Vec rhs(q);
    rhs.push_back(1.0);
    std::vector<Vec> ata(k, Vec(k, 0.0));
    Vec atb(k, 0.0);
    for (size_t r = 0; r < rows.size(); ++r)
      for (size_t i = 0; i < k; ++i) {
        for (size_t j = 0; j < k; ++j) ata[i][j] += rows[r][i] * rows[r][j];
        atb[i] += rows[r][i] * rhs[r];
      }
    if (!solve_square(std::move(ata), std::move(atb), coeffs)) return false;
    for (size_t r = 0; r < rows.size(); ++r) {
      double acc = 0;
      for (size_t j = 0; j < k; ++j) acc += rows[r][j] * (*coeffs)[j];
      if (std::abs(acc - rhs[r]) > 1e-7) return false;
    }
  }
  for (double c : *coeffs)
    if (c < -tol) return false;
  return true;
}

void consider(const NormalizedSupport& ns, const std::vector<int>& sel, const Vec& coeffs,
              CaratheodoryResult* best) {
  double v = 0;
  for (size_t j = 0; j < sel.size(); ++j) v += std::max(0.0, coeffs[j]) * ns.vals[static_cast<size_t>(sel[j])];
  if (best->outside_hull || ExtReal(v) < best->value) {
    best->outside_hull = false;
    best->value = ExtReal(v);
    best->support_ids.clear();
    best->coeffs.clear();
    for (size_t j = 0; j < sel.size(); ++j) {
      best->support_ids.push_back(ns.ids[static_cast<size_t>(sel[j])]);
      best->coeffs.push_back(std::max(0.0, coeffs[j]));
    }
  }
}

// All k-subsets via fixed-depth loops (k <= 5 in practice).
template <typename F>
void for_each_subset(int n, int k, F&& fn) {
  std::vector<int> sel(static_cast<size_t>(k));
  std::function<void(int, int)> rec = [&](int start, int depth) {
    if (depth == k) {
      fn(sel);
      return;
    }
    for (int i = start; i <= n - (k - depth); ++i) {
      sel[static_cast<size_t>(depth)] = i;
      rec(i + 1, depth + 1);
    }
  };
  rec(0, 0);
}

}  // namespace

CaratheodoryResult caratheodory_envelope(const std::vector<Vec>& support,
                                         const std::vector<ExtReal>& values, const Vec& xi,
                                         double tol) {
  const int m = static_cast<int>(xi.size());
  if (m < 1 || m > 3) throw ConfigError("caratheodory: m must be 1..3");
  NormalizedSupport ns = normalize_support(support, values);
  const int n = static_cast<int>(ns.pts.size());
  if (n == 0) throw ConfigError("caratheodory: no finite-valued support points");
  if (m == 2 && n > 400) throw ConfigError("caratheodory: support cap (400) exceeded for m=2");
  if (m == 3 && n > 120) throw ConfigError("caratheodory: support cap (120) exceeded for m=3");

  Vec q(xi);
  for (size_t k = 0; k < q.size(); ++k) q[k] /= ns.scale[k];

  CaratheodoryResult best;
  best.outside_hull = true;
  best.value = ExtReal::infinity();

  for (int k = 1; k <= m + 1; ++k) {
    for_each_subset(n, k, [&](const std::vector<int>& sel) {
      // cheap reject: the subset's bounding box must contain q
      for (size_t c = 0; c < q.size(); ++c) {
        double lo = HUGE_VAL, hi = -HUGE_VAL;
        for (int j : sel) {
          lo = std::min(lo, ns.pts[static_cast<size_t>(j)][c]);
          hi = std::max(hi, ns.pts[static_cast<size_t>(j)][c]);
        }
        if (q[c] < lo - tol || q[c] > hi + tol) return;
      }
      Vec coeffs;
      if (barycentric(ns.pts, sel, q, tol, &coeffs)) consider(ns, sel, coeffs, &best);
    });
  }
  return best;
}

CaratheodoryResult caratheodory_envelope_ext(const std::vector<Vec>& support,
                                             const std::vector<ExtReal>& values, const Vec& xi,
                                             double tol) {
  const int m = static_cast<int>(xi.size());
  if (m < 1 || m > 2) throw ConfigError("caratheodory_ext: m must be 1..2");
  NormalizedSupport ns = normalize_support(support, values);
  const int n = static_cast<int>(ns.pts.size());
  if (n > 60) throw ConfigError("caratheodory_ext: support cap (60) exceeded");
  Vec q(xi);
  for (size_t k = 0; k < q.size(); ++k) q[k] /= ns.scale[k];

  CaratheodoryResult best;
  best.outside_hull = true;
  best.value = ExtReal::infinity();
  const int k = m + 2;
  if (n < k) return best;

  for_each_subset(n, k, [&](const std::vector<int>& sel) {
    // Particular solution via least squares on the (m+1) x k system, then
    // walk the nullspace segment to both feasibility endpoints.
    const size_t rows_n = static_cast<size_t>(m) + 1;
    std::vector<Vec> rows(rows_n, Vec(static_cast<size_t>(k), 1.0));
    Vec rhs(rows_n, 1.0);
    for (int c = 0; c < m; ++c) {
      for (int j = 0; j < k; ++j) rows[static_cast<size_t>(c)][static_cast<size_t>(j)] = ns.pts[static_cast<size_t>(sel[static_cast<size_t>(j)])][static_cast<size_t>(c)];
      rhs[static_cast<size_t>(c)] = q[static_cast<size_t>(c)];
    }
    // Nullspace direction of the row system (k unknowns, m+1 equations,
    // nullity >= 1): Gram-Schmidt the rows, then complete.
    std::vector<Vec> ortho;
    for (const auto& r : rows) {
      Vec v = r;
      for (const auto& b : ortho) {
        double c = dot(v, b);
        for (size_t i = 0; i < v.size(); ++i) v[i] -= c * b[i];
      }
      double len = norm2(v);
      if (len > 1e-12) ortho.push_back(scaled(1.0 / len, v));
    }
    Vec dir;
    for (int axis = 0; axis < k && dir.empty(); ++axis) {
      Vec v = basis_vec(k, axis);
      for (int pass = 0; pass < 2; ++pass)
        for (const auto& b : ortho) {
          double c = dot(v, b);
          for (size_t i = 0; i < v.size(); ++i) v[i] -= c * b[i];
        }
      if (norm2(v) > 1e-9) dir = scaled(1.0 / norm2(v), v);
    }
    if (dir.empty()) return;
    // Particular solution by normal equations.
    std::vector<Vec> ata(static_cast<size_t>(k), Vec(static_cast<size_t>(k), 0.0));
    Vec atb(static_cast<size_t>(k), 0.0);
    for (size_t r = 0; r < rows.size(); ++r)
      for (int i = 0; i < k; ++i) {
        for (int j = 0; j < k; ++j) ata[static_cast<size_t>(i)][static_cast<size_t>(j)] += rows[r][static_cast<size_t>(i)] * rows[r][static_cast<size_t>(j)];
        atb[static_cast<size_t>(i)] += rows[r][static_cast<size_t>(i)] * rhs[r];
      }
    // Regularize along the nullspace so the normal system is invertible.
    for (int i = 0; i < k; ++i)
      for (int j = 0; j < k; ++j) ata[static_cast<size_t>(i)][static_cast<size_t>(j)] += dir[static_cast<size_t>(i)] * dir[static_cast<size_t>(j)];
    Vec part;
    if (!solve_square(std::move(ata), std::move(atb), &part)) return;
    // verify residual of the particular solution
    for (size_t r = 0; r < rows.size(); ++r) {
      double acc = 0;
      for (int j = 0; j < k; ++j) acc += rows[r][static_cast<size_t>(j)] * part[static_cast<size_t>(j)];
      if (std::abs(acc - rhs[r]) > 1e-7) return;
    }
    // Feasible t-range for part + t * dir >= 0.
    double t_lo = -HUGE_VAL, t_hi = HUGE_VAL;
    for (int j = 0; j < k; ++j) {
      double p = part[static_cast<size_t>(j)], d = dir[static_cast<size_t>(j)];
      if (std::abs(d) < 1e-14) {
        if (p < -tol) return;  // infeasible regardless of t
        continue;
      }
      double bound = -p / d;
      if (d > 0)
        t_lo = std::max(t_lo, bound);
      else
        t_hi = std::min(t_hi, bound);
    }
    if (t_lo > t_hi + tol) return;
    double cost_dir = 0;
    for (int j = 0; j < k; ++j) cost_dir += dir[static_cast<size_t>(j)] * ns.vals[static_cast<size_t>(sel[static_cast<size_t>(j)])];
    double t_best = cost_dir >= 0 ? t_lo : t_hi;
    if (!std::isfinite(t_best)) return;  // cost unbounded: skip (cannot happen for bounded hulls)
    Vec coeffs(static_cast<size_t>(k));
    for (int j = 0; j < k; ++j) coeffs[static_cast<size_t>(j)] = part[static_cast<size_t>(j)] + t_best * dir[static_cast<size_t>(j)];
    for (double c : coeffs)
      if (c < -10 * tol) return;
    consider(ns, sel, coeffs, &best);
  });
  return best;
}

BruteResult almost_convex_bruteforce(const PhiFunction& phi, const std::vector<Vec>& points,
                                     const std::vector<double>& alphas, double beta, double tol) {
  BruteResult out;
  double worst = 0;
  for (size_t i = 0; i < points.size(); ++i)
    for (size_t j = i; j < points.size(); ++j)
      for (double a : alphas) {
        Vec mix = lin(a, points[i], 1 - a, points[j]);
        ExtReal lhs = phi(scaled(beta, mix));
        ExtReal rhs = scale(a, phi(points[i])) + scale(1 - a, phi(points[j]));
        if (leq_tol(lhs, rhs, tol * (1 + (rhs.is_finite() ? rhs.value() : 0)))) continue;
        double viol = (lhs.value() - rhs.value()) / (1 + rhs.value());  // rhs finite here
        if (!out.pass && viol <= worst) continue;
        out.pass = false;
        worst = viol;
        out.worst = {points[i], points[j], a, lhs.value(), rhs.value(), viol};
      }
  return out;
}

ScanResult norm_dense_scan(const SpatialPhiFunction& phi, const VectorField& v,
                           const std::vector<double>& lambdas) {
  ScanResult out;
  std::vector<double> sorted = lambdas;
  std::sort(sorted.begin(), sorted.end());
  for (double lam : sorted) {
    if (!(lam > 0)) continue;
    ExtReal r = modular(phi, v.scaled_by(1.0 / lam));
    if (r <= ExtReal(1.0)) {
      out.found = true;
      out.lambda = lam;
      out.modular_at = r.value();
      return out;
    }
  }
  return out;
}

}  // namespace orlicz
