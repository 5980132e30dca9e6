#include "orlicz/envelope.hpp"

#include <algorithm>
#include <cmath>

#include "orlicz/rng.hpp"
#include "orlicz/text.hpp"

namespace orlicz {

namespace {

// Solve the (n x n) system in place by Gaussian elimination, n <= 4.
Vec solve_small(std::vector<Vec> a, Vec b) {
  const size_t n = b.size();
  for (size_t col = 0; col < n; ++col) {
    size_t piv = col;
    for (size_t r = col + 1; r < n; ++r)
      if (std::abs(a[r][col]) > std::abs(a[piv][col])) piv = r;
    if (std::abs(a[piv][col]) < 1e-14) throw std::runtime_error("affine fit: singular system");
    std::swap(a[piv], a[col]);
    std::swap(b[piv], b[col]);
    for (size_t r = 0; r < n; ++r) {
      if (r == col) continue;
      double f = a[r][col] / a[col][col];
      for (size_t c = col; c < n; ++c) a[r][c] -= f * a[col][c];
      b[r] -= f * b[col];
    }
  }
  for (size_t i = 0; i < n; ++i) b[i] /= a[i][i];
  return b;
}

}  // namespace

GridEnvelope::GridEnvelope(GridFunction grid) : grid_(std::move(grid)) {
  grid_.validate();
  const int m = grid_.dim;
  for (int i = 0; i < static_cast<int>(grid_.size()); ++i)
    if (grid_.values[static_cast<size_t>(i)].is_finite()) finite_ids_.push_back(i);

  double vmin = HUGE_VAL, vmax = -HUGE_VAL;
  for (int i : finite_ids_) {
    vmin = std::min(vmin, grid_.values[static_cast<size_t>(i)].value());
    vmax = std::max(vmax, grid_.values[static_cast<size_t>(i)].value());
  }
  const double vspan = vmax - vmin;

  // ---- domain of the minorant: convex hull of finite-valued points --------
  {
    Vec lo = grid_.points[static_cast<size_t>(finite_ids_[0])];
    Vec hi = lo;
    for (int i : finite_ids_)
      for (int k = 0; k < m; ++k) {
        lo[static_cast<size_t>(k)] = std::min(lo[static_cast<size_t>(k)], grid_.points[static_cast<size_t>(i)][static_cast<size_t>(k)]);
        hi[static_cast<size_t>(k)] = std::max(hi[static_cast<size_t>(k)], grid_.points[static_cast<size_t>(i)][static_cast<size_t>(k)]);
      }
    domain_scale_ = 1;
    for (int k = 0; k < m; ++k)
      domain_scale_ = std::max(domain_scale_, std::max(std::abs(lo[static_cast<size_t>(k)]), std::abs(hi[static_cast<size_t>(k)])));

    bool all_finite = finite_ids_.size() == grid_.size();
    if (m == 1) {
      box_domain_ = BoxDomain{lo, hi};
      if (!(hi[0] > lo[0]))
        throw std::invalid_argument("GridEnvelope: m=1 effective domain is a single point");
    } else if (all_finite && grid_.axes) {
      box_domain_ = BoxDomain{lo, hi};
    } else {
      std::vector<Vec> fin;
      for (int i : finite_ids_) fin.push_back(grid_.points[static_cast<size_t>(i)]);
      hull::Hull dh = hull::convex_hull(fin);
      if (dh.degenerate)
        throw std::invalid_argument("GridEnvelope: effective domain not full-dimensional");
      // Re-map vertex ids back to grid ids.
      for (auto& f : dh.facets)
        for (int& v : f.verts) v = finite_ids_[static_cast<size_t>(v)];
      for (int& v : dh.vertices) v = finite_ids_[static_cast<size_t>(v)];
      domain_ = std::move(dh);
    }
  }

  // ---- the minorant itself ------------------------------------------------
  if (m == 1) {
    std::vector<std::pair<double, double>> pts;
    for (int i : finite_ids_)
      pts.emplace_back(grid_.points[static_cast<size_t>(i)][0], grid_.values[static_cast<size_t>(i)].value());
    std::sort(pts.begin(), pts.end());
    for (const auto& p : pts) {
      while (chain_.size() >= 2) {
        const auto& a = chain_[chain_.size() - 2];
        const auto& b = chain_.back();
        // keep b only if it lies strictly below chord a--p
        double lhs = (b.second - a.second) * (p.first - a.first);
        double rhs = (p.second - a.second) * (b.first - a.first);
        if (lhs >= rhs) chain_.pop_back();
        else break;
      }
      chain_.push_back(p);
    }
  } else {
    std::vector<Vec> lifted;
    lifted.reserve(finite_ids_.size());
    for (int i : finite_ids_) {
      Vec p = grid_.points[static_cast<size_t>(i)];
      p.push_back(grid_.values[static_cast<size_t>(i)].value());
      lifted.push_back(std::move(p));
    }
    const double scale = std::max(vspan, 1.0);
    hull::Hull h;
    bool built = false;
    for (double rel : {0.0, 1e-12, 1e-10, 1e-8}) {
      std::vector<Vec> work = lifted;
      if (rel > 0)
        for (size_t i = 0; i < work.size(); ++i)
          work[i].back() += rel * scale * (2 * radical_inverse(i + 1, 3) - 1);
      try {
        h = hull::convex_hull(work);
        built = true;
        if (rel > 0) {
          perturbed_ = true;
          perturb_eps_ = rel * scale;
        }
        break;
      } catch (const hull::DegenerateFacetError&) {
        continue;
      }
    }
    if (!built) throw std::runtime_error("GridEnvelope: hull construction failed");

    if (h.degenerate) {
      // Lifted cloud is affinely flat: the minorant is the affine interpolant.
      affine_ = true;
      size_t n = static_cast<size_t>(m) + 1;
      std::vector<Vec> ata(n, Vec(n, 0.0));
      Vec atv(n, 0.0);
      for (int i : finite_ids_) {
        Vec row = grid_.points[static_cast<size_t>(i)];
        row.push_back(1.0);
        double v = grid_.values[static_cast<size_t>(i)].value();
        for (size_t r = 0; r < n; ++r) {
          for (size_t c = 0; c < n; ++c) ata[r][c] += row[r] * row[c];
          atv[r] += row[r] * v;
        }
      }
      Vec sol = solve_small(std::move(ata), std::move(atv));
      affine_offset_ = sol.back();
      sol.pop_back();
      affine_grad_ = std::move(sol);
    } else {
      for (const auto& f : h.facets) {
        double nz = f.normal.back();
        if (nz >= -1e-12) continue;  // upper or vertical facet
        LowerFacet lf;
        lf.grad.resize(static_cast<size_t>(m));
        for (int k = 0; k < m; ++k) lf.grad[static_cast<size_t>(k)] = -f.normal[static_cast<size_t>(k)] / nz;
        lf.offset = f.offset / nz;
        for (int v : f.verts) lf.verts.push_back(finite_ids_[static_cast<size_t>(v)]);
        facets_.push_back(std::move(lf));
      }
      if (facets_.empty()) throw std::runtime_error("GridEnvelope: no lower facets found");
    }
  }

  // ---- window-contact flags ----------------------------------------------
  auto on_window = [&](const Vec& p) {
    if (box_domain_) {
      for (size_t k = 0; k < p.size(); ++k) {
        double span = box_domain_->hi[k] - box_domain_->lo[k];
        double tol = 1e-9 * std::max(span, 1.0);
        if (std::abs(p[k] - box_domain_->lo[k]) <= tol || std::abs(p[k] - box_domain_->hi[k]) <= tol)
          return true;
      }
      return false;
    }
    for (const auto& f : domain_->facets)
      if (dot(f.normal, p) >= f.offset - 1e-9 * std::max(domain_scale_, 1.0)) return true;
    return false;
  };
  for (auto& lf : facets_) {
    for (int v : lf.verts)
      if (on_window(grid_.points[static_cast<size_t>(v)])) {
        lf.window_contact = true;
        break;
      }
  }

  // ---- minorant at the grid's own points ----------------------------------
  env_values_.reserve(grid_.size());
  for (size_t i = 0; i < grid_.size(); ++i) {
    ExtReal e = eval(grid_.points[i]);
    // The minorant never exceeds the sample it minorizes; trim rounding fuzz.
    if (grid_.values[i].is_finite() && e.is_finite() && e.value() > grid_.values[i].value())
      e = grid_.values[i];
    env_values_.push_back(e);
  }

  // ---- global slack summary (product grids) -------------------------------
  if (grid_.axes) {
    const auto& ax = *grid_.axes;
    bool usable = true;
    for (const auto& a : ax)
      if (a.size() < 2) usable = false;
    if (usable && m >= 1) {
      std::vector<int> cell(ax.size(), 0);
      bool done = false;
      while (!done) {
        Vec probe(ax.size());
        bool ok = true;
        for (size_t a = 0; a < ax.size(); ++a) {
          if (static_cast<size_t>(cell[a]) + 1 >= ax[a].size()) {
            ok = false;
            break;
          }
          probe[a] = 0.5 * (ax[a][static_cast<size_t>(cell[a])] + ax[a][static_cast<size_t>(cell[a]) + 1]);
        }
        if (ok) {
          double s = slack_at(probe);
          if (std::isfinite(s)) max_slack_ = std::max(max_slack_, s);
        }
        // advance cell multi-index over cells (sizes - 1 per axis)
        int a = static_cast<int>(ax.size()) - 1;
        for (;; --a) {
          if (a < 0) {
            done = true;
            break;
          }
          if (++cell[static_cast<size_t>(a)] < static_cast<int>(ax[static_cast<size_t>(a)].size()) - 1) break;
          cell[static_cast<size_t>(a)] = 0;
        }
      }
    }
  }
}

double GridEnvelope::chain_eval(double t) const {
  t = std::clamp(t, chain_.front().first, chain_.back().first);
  auto it = std::upper_bound(chain_.begin(), chain_.end(), std::make_pair(t, HUGE_VAL));
  if (it == chain_.begin()) return chain_.front().second;
  if (it == chain_.end()) return chain_.back().second;
  const auto& b = *it;
  const auto& a = *(it - 1);
  double w = (t - a.first) / (b.first - a.first);
  return a.second + w * (b.second - a.second);
}

double GridEnvelope::facet_eval(const Vec& xi, bool* contact) const {
  double best = -HUGE_VAL;
  bool c = false;
  for (const auto& f : facets_) {
    double v = dot(f.grad, xi) + f.offset;
    // tolerance anchored at the finite candidate so the -inf start is safe
    double tol = 1e-12 * (1 + std::abs(v));
    if (v > best + tol) {
      best = v;
      c = f.window_contact;
    } else if (v >= best - tol) {
      c = c || f.window_contact;
    }
  }
  if (contact) *contact = c;
  return best;
}

bool GridEnvelope::in_domain(const Vec& xi, double tol) const {
  double t = tol * std::max(domain_scale_, 1.0);
  if (box_domain_) {
    for (size_t k = 0; k < xi.size(); ++k)
      if (xi[k] < box_domain_->lo[k] - t || xi[k] > box_domain_->hi[k] + t) return false;
    return true;
  }
  return domain_->contains(xi, t);
}

ExtReal GridEnvelope::eval(const Vec& xi) const {
  if (static_cast<int>(xi.size()) != grid_.dim)
    throw std::invalid_argument("GridEnvelope::eval: dimension mismatch");
  if (!in_domain(xi)) return ExtReal::infinity();
  if (grid_.dim == 1) return ExtReal(std::max(0.0, chain_eval(xi[0])));
  if (affine_) return ExtReal(std::max(0.0, dot(affine_grad_, xi) + affine_offset_));
  return ExtReal(std::max(0.0, facet_eval(xi, nullptr)));
}

bool GridEnvelope::window_contact(const Vec& xi) const {
  if (!in_domain(xi)) return false;
  if (grid_.dim == 1) {
    double t = std::clamp(xi[0], chain_.front().first, chain_.back().first);
    if (chain_.size() < 2) return true;
    auto it = std::upper_bound(chain_.begin(), chain_.end(), std::make_pair(t, HUGE_VAL));
    size_t seg_hi = static_cast<size_t>(std::clamp<long>(it - chain_.begin(), 1, static_cast<long>(chain_.size()) - 1));
    return seg_hi == 1 || seg_hi + 1 == chain_.size();
  }
  if (affine_) return true;
  bool c = false;
  facet_eval(xi, &c);
  return c;
}

double GridEnvelope::slack_at(const Vec& xi) const {
  if (!grid_.axes) throw std::logic_error("slack_at: requires a product grid");
  auto cell = grid_.locate_cell(xi);
  if (!cell) return HUGE_VAL;
  const auto& ax = *grid_.axes;
  double total = 0;
  for (size_t a = 0; a < ax.size(); ++a) {
    if (ax[a].size() < 3) continue;  // cannot estimate curvature on 2 samples
    // Second differences along axis a through the cell's low corner, at the
    // corner and one step up (whichever exist), worst case taken.
    double worst = 0;
    int lo_base = std::max(0, (*cell)[a] - 1);
    int hi_base = std::min((*cell)[a], static_cast<int>(ax[a].size()) - 3);
    lo_base = std::min(lo_base, hi_base);
    for (int base = lo_base; base <= hi_base; ++base) {
      std::vector<int> mi = *cell;
      double v[3];
      bool fin = true;
      for (int s = 0; s < 3; ++s) {
        mi[a] = base + s;
        ExtReal e = grid_.values[grid_.flat_index(mi)];
        if (!e.is_finite()) {
          fin = false;
          break;
        }
        v[s] = e.value();
      }
      if (!fin) return HUGE_VAL;
      worst = std::max(worst, std::abs(v[0] - 2 * v[1] + v[2]));
    }
    total += worst;
  }
  return total / 8.0;
}

std::string GridEnvelope::note() const {
  std::string s = "points=" + fmt_int(static_cast<long long>(grid_.size())) +
                  " finite=" + fmt_int(static_cast<long long>(finite_ids_.size()));
  if (grid_.dim == 1)
    s += " chain=" + fmt_int(static_cast<long long>(chain_.size()));
  else if (affine_)
    s += " mode=affine";
  else
    s += " lower-facets=" + fmt_int(static_cast<long long>(facets_.size()));
  s += " max-slack=" + fmt_num(max_slack_);
  if (perturbed_) s += " perturbed-eps=" + fmt_num(perturb_eps_);
  return s;
}

GridEnvelope convex_minorant_grid(GridFunction grid) { return GridEnvelope(std::move(grid)); }

ExtReal convex_minorant_eval(const GridFunction& grid, const Vec& xi) {
  return GridEnvelope(grid).eval(xi);
}

PhiFunction envelope_function(std::shared_ptr<const GridEnvelope> env) {
  if (!env) throw std::invalid_argument("envelope_function: null envelope");
  int m = env->grid().dim;
  std::string label = "convex-minorant(" + env->note() + ")";
  return PhiFunction::from_callable(
      m, [env](const Vec& xi) { return env->eval(xi); }, /*convex=*/true, label);
}

std::string envelope_csv(const GridEnvelope& env) {
  const auto& g = env.grid();
  std::string out;
  for (int k = 1; k <= g.dim; ++k) out += "xi_" + fmt_int(k) + ",";
  out += "value,minorant,window_contact\n";
  for (size_t i = 0; i < g.size(); ++i) {
    for (double c : g.points[i]) out += fmt_num(c) + ",";
    out += fmt_num(g.values[i].value()) + "," + fmt_num(env.values()[i].value()) + ",";
    bool contact = env.values()[i].is_finite() && env.window_contact(g.points[i]);
    out += contact ? "1" : "0";
    out += "\n";
  }
  return out;
}

}  // namespace orlicz
