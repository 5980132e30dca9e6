/// @file hull.hpp
/// Incremental convex hull in dimension 1..4.
///
/// The envelope module lifts grid samples to R^(m+1) and reads the greatest
/// convex minorant off the lower facets, so the hull has to work one
/// dimension above the largest supported argument dimension (m <= 3).
/// Beneath-beyond insertion with explicit horizon extraction is plenty at the
/// point counts we see (a few thousand); no conflict graph needed.
///
/// All tolerance decisions happen in internally normalized coordinates
/// (each axis mapped to [-1, 1]); returned facet planes are expressed in the
/// original coordinates with unit normals.
#pragma once

#include <stdexcept>
#include <vector>

#include "orlicz/vec.hpp"

namespace orlicz::hull {

struct Facet {
  std::vector<int> verts;  // indices into the input point list, sorted
  Vec normal;              // outward unit normal, original coordinates
  double offset = 0;       // hull side: normal . x <= offset
};

struct Hull {
  int dim = 0;
  bool degenerate = false;  // affine rank of the input < dim
  int affine_rank = 0;
  std::vector<Facet> facets;
  std::vector<int> vertices;  // sorted union of facet vertex ids
  /// true iff p satisfies every facet inequality up to tol (absolute, in
  /// original coordinates scaled by axis spans).  Throws if degenerate.
  bool contains(const Vec& p, double tol) const;
};

/// Raised when a facet's defining points are numerically affinely dependent
/// or a horizon ridge is inconsistent; callers may retry with perturbed data.
struct DegenerateFacetError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// eps_vis: visibility threshold in normalized coordinates.  Points within
/// eps_vis of a facet plane count as beneath it (and are absorbed rather than
/// becoming vertices), which keeps coplanar grids stable.
Hull convex_hull(const std::vector<Vec>& pts, double eps_vis = 1e-10);

}  // namespace orlicz::hull
