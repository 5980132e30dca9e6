#include "orlicz/hull.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>

namespace orlicz::hull {

namespace {

constexpr double kEpsRank = 1e-9;   // affine-independence threshold (normalized)
constexpr double kEpsLin = 1e-12;   // facet construction failure threshold

struct Frame {
  Vec center, halfspan;  // x_norm = (x - center) / halfspan, per axis
};

Frame make_frame(const std::vector<Vec>& pts, int d) {
  Frame f;
  f.center.assign(static_cast<size_t>(d), 0);
  f.halfspan.assign(static_cast<size_t>(d), 1);
  for (int k = 0; k < d; ++k) {
    double lo = pts[0][static_cast<size_t>(k)], hi = lo;
    for (const auto& p : pts) {
      lo = std::min(lo, p[static_cast<size_t>(k)]);
      hi = std::max(hi, p[static_cast<size_t>(k)]);
    }
    f.center[static_cast<size_t>(k)] = 0.5 * (lo + hi);
    double h = 0.5 * (hi - lo);
    f.halfspan[static_cast<size_t>(k)] = h > 0 ? h : 1.0;  // flat axis: rank check will flag
  }
  return f;
}

Vec to_norm(const Frame& f, const Vec& p) {
  Vec q(p.size());
  for (size_t k = 0; k < p.size(); ++k) q[k] = (p[k] - f.center[k]) / f.halfspan[k];
  return q;
}

// Subtract projections of v onto the orthonormal set basis, twice for
// numerical hygiene.
Vec residual(const std::vector<Vec>& basis, Vec v) {
  for (int pass = 0; pass < 2; ++pass)
    for (const auto& b : basis) {
      double c = dot(v, b);
      for (size_t k = 0; k < v.size(); ++k) v[k] -= c * b[k];
    }
  return v;
}

struct WorkFacet {
  std::vector<int> verts;
  Vec normal;       // normalized coordinates, unit length
  double offset = 0;
  bool alive = true;
};

// Plane through the facet's points, oriented so that `inside` lies strictly
// on the negative side.  Throws DegenerateFacetError if the points are
// affinely dependent or `inside` is on the plane.
WorkFacet make_facet(const std::vector<Vec>& npts, std::vector<int> verts, const Vec& inside) {
  const size_t d = npts[0].size();
  const Vec& x0 = npts[static_cast<size_t>(verts[0])];
  std::vector<Vec> basis;
  for (size_t i = 1; i < verts.size(); ++i) {
    Vec e = residual(basis, vdiff(npts[static_cast<size_t>(verts[i])], x0));
    double n = norm2(e);
    if (n < kEpsLin) throw DegenerateFacetError("affinely dependent facet points");
    basis.push_back(scaled(1.0 / n, e));
  }
  // Seed the normal with the inside direction, falling back to coordinate
  // axes if that happens to lie in the facet's span.
  Vec n = residual(basis, vdiff(inside, x0));
  double len = norm2(n);
  if (len < kEpsLin) {
    for (size_t k = 0; k < d && len < kEpsLin; ++k) {
      n = residual(basis, basis_vec(static_cast<int>(d), static_cast<int>(k)));
      len = norm2(n);
    }
    if (len < kEpsLin) throw DegenerateFacetError("cannot complete facet normal");
  }
  n = scaled(1.0 / len, n);
  double side = dot(n, vdiff(inside, x0));
  if (std::abs(side) < kEpsLin) throw DegenerateFacetError("interior point on facet plane");
  if (side > 0) n = scaled(-1.0, n);  // outward
  WorkFacet f;
  std::sort(verts.begin(), verts.end());
  f.verts = std::move(verts);
  f.normal = std::move(n);
  double o = 0;
  for (int v : f.verts) o += dot(f.normal, npts[static_cast<size_t>(v)]);
  f.offset = o / static_cast<double>(f.verts.size());
  return f;
}

Hull interval_hull(const std::vector<Vec>& pts) {
  Hull h;
  h.dim = 1;
  int imin = 0, imax = 0;
  for (int i = 1; i < static_cast<int>(pts.size()); ++i) {
    if (pts[static_cast<size_t>(i)][0] < pts[static_cast<size_t>(imin)][0]) imin = i;
    if (pts[static_cast<size_t>(i)][0] > pts[static_cast<size_t>(imax)][0]) imax = i;
  }
  if (pts[static_cast<size_t>(imax)][0] - pts[static_cast<size_t>(imin)][0] <= 0) {
    h.degenerate = true;
    h.affine_rank = 0;
    return h;
  }
  h.affine_rank = 1;
  h.facets.push_back({{imin}, {-1.0}, -pts[static_cast<size_t>(imin)][0]});
  h.facets.push_back({{imax}, {1.0}, pts[static_cast<size_t>(imax)][0]});
  h.vertices = {std::min(imin, imax), std::max(imin, imax)};
  return h;
}

}  // namespace

bool Hull::contains(const Vec& p, double tol) const {
  if (degenerate) throw std::logic_error("Hull::contains: degenerate hull");
  for (const auto& f : facets)
    if (dot(f.normal, p) > f.offset + tol) return false;
  return true;
}

Hull convex_hull(const std::vector<Vec>& pts, double eps_vis) {
  if (pts.empty()) throw std::invalid_argument("convex_hull: no points");
  const int d = static_cast<int>(pts[0].size());
  if (d < 1 || d > 4) throw std::invalid_argument("convex_hull: dim must be 1..4");
  for (const auto& p : pts)
    if (static_cast<int>(p.size()) != d) throw std::invalid_argument("convex_hull: mixed dims");
  if (d == 1) return interval_hull(pts);

  const Frame frame = make_frame(pts, d);
  std::vector<Vec> npts;
  npts.reserve(pts.size());
  for (const auto& p : pts) npts.push_back(to_norm(frame, p));

  // Affine basis by greedy farthest-residual selection.
  Hull out;
  out.dim = d;
  int i0 = 0;
  for (int i = 1; i < static_cast<int>(npts.size()); ++i)
    if (npts[static_cast<size_t>(i)] < npts[static_cast<size_t>(i0)]) i0 = i;
  std::vector<int> simplex = {i0};
  std::vector<Vec> basis;
  while (static_cast<int>(basis.size()) < d) {
    int best = -1;
    double best_len = kEpsRank;
    for (int i = 0; i < static_cast<int>(npts.size()); ++i) {
      double len = norm2(residual(basis, vdiff(npts[static_cast<size_t>(i)], npts[static_cast<size_t>(i0)])));
      if (len > best_len) {
        best_len = len;
        best = i;
      }
    }
    if (best < 0) break;
    simplex.push_back(best);
    Vec e = residual(basis, vdiff(npts[static_cast<size_t>(best)], npts[static_cast<size_t>(i0)]));
    basis.push_back(scaled(1.0 / norm2(e), e));
  }
  out.affine_rank = static_cast<int>(basis.size());
  if (out.affine_rank < d) {
    out.degenerate = true;
    return out;
  }

  Vec interior = zero_vec(d);
  for (int v : simplex) interior = vsum(interior, npts[static_cast<size_t>(v)]);
  interior = scaled(1.0 / static_cast<double>(simplex.size()), interior);

  std::vector<WorkFacet> facets;
  for (size_t skip = 0; skip < simplex.size(); ++skip) {
    std::vector<int> verts;
    for (size_t i = 0; i < simplex.size(); ++i)
      if (i != skip) verts.push_back(simplex[i]);
    facets.push_back(make_facet(npts, std::move(verts), interior));
  }

  std::vector<char> used(npts.size(), 0);
  for (int v : simplex) used[static_cast<size_t>(v)] = 1;

  for (int i = 0; i < static_cast<int>(npts.size()); ++i) {
    if (used[static_cast<size_t>(i)]) continue;
    const Vec& p = npts[static_cast<size_t>(i)];
    std::vector<int> visible;
    for (int fi = 0; fi < static_cast<int>(facets.size()); ++fi) {
      const auto& f = facets[static_cast<size_t>(fi)];
      if (f.alive && dot(f.normal, p) - f.offset > eps_vis) visible.push_back(fi);
    }
    if (visible.empty()) continue;  // beneath every facet: absorbed

    // Horizon = ridges bordering exactly one visible facet.
    std::map<std::vector<int>, int> ridge_count;
    for (int fi : visible) {
      const auto& verts = facets[static_cast<size_t>(fi)].verts;
      for (size_t skip = 0; skip < verts.size(); ++skip) {
        std::vector<int> ridge;
        for (size_t k = 0; k < verts.size(); ++k)
          if (k != skip) ridge.push_back(verts[k]);
        ridge_count[ridge] += 1;
      }
    }
    std::vector<WorkFacet> fresh;
    for (const auto& [ridge, count] : ridge_count) {
      if (count == 1) {
        std::vector<int> verts = ridge;
        verts.push_back(i);
        fresh.push_back(make_facet(npts, std::move(verts), interior));
      } else if (count > 2) {
        throw DegenerateFacetError("ridge shared by more than two visible facets");
      }
    }
    if (fresh.empty()) throw DegenerateFacetError("visible region with empty horizon");
    for (int fi : visible) facets[static_cast<size_t>(fi)].alive = false;
    for (auto& f : fresh) facets.push_back(std::move(f));
  }

  // Sanity: every input point beneath every surviving facet (with slack).
  for (const auto& f : facets) {
    if (!f.alive) continue;
    for (const auto& q : npts)
      if (dot(f.normal, q) - f.offset > 64 * eps_vis)
        throw DegenerateFacetError("hull invariant violated (point above facet)");
  }

  // Un-normalize facet planes back to original coordinates.
  for (auto& f : facets) {
    if (!f.alive) continue;
    Vec n(static_cast<size_t>(d));
    double o = f.offset;
    for (int k = 0; k < d; ++k) {
      n[static_cast<size_t>(k)] = f.normal[static_cast<size_t>(k)] / frame.halfspan[static_cast<size_t>(k)];
      o += f.normal[static_cast<size_t>(k)] * frame.center[static_cast<size_t>(k)] / frame.halfspan[static_cast<size_t>(k)];
    }
    double len = norm2(n);
    Facet g;
    g.verts = f.verts;
    g.normal = scaled(1.0 / len, n);
    g.offset = o / len;
    out.facets.push_back(std::move(g));
  }
  std::vector<int> vs;
  for (const auto& f : out.facets) vs.insert(vs.end(), f.verts.begin(), f.verts.end());
  std::sort(vs.begin(), vs.end());
  vs.erase(std::unique(vs.begin(), vs.end()), vs.end());
  out.vertices = std::move(vs);
  return out;
}

}  // namespace orlicz::hull
