/// @file envelope.hpp
/// Greatest convex minorant of grid samples.
///
/// Build once from a GridFunction, then evaluate anywhere: inside the convex
/// hull of the finite-valued sample points the minorant is the maximum of the
/// lower facet planes of the lifted point cloud; outside it is infinity.
/// Points with infinite sample values participate only through their absence.
///
/// Because the grid is a finite window into R^m, the result can differ from
/// the untruncated minorant near the window boundary; facets touching the
/// boundary carry a contact flag so callers can discount those regions, and a
/// second-difference slack estimate quantifies the sampling gap on product
/// grids.
#pragma once

#include <memory>
#include <optional>
#include <string>

#include "orlicz/grid.hpp"
#include "orlicz/hull.hpp"
#include "orlicz/phi_function.hpp"

namespace orlicz {

struct LowerFacet {
  Vec grad;          // plane z = grad . xi + offset
  double offset = 0;
  std::vector<int> verts;  // grid indices
  bool window_contact = false;
};

class GridEnvelope {
 public:
  explicit GridEnvelope(GridFunction grid);

  const GridFunction& grid() const { return grid_; }
  /// Minorant values at the grid's own points (index-aligned with grid()).
  const std::vector<ExtReal>& values() const { return env_values_; }

  ExtReal eval(const Vec& xi) const;

  /// true if xi lies in the convex hull of the finite-valued sample points.
  bool in_domain(const Vec& xi, double tol = 1e-9) const;

  /// true if the facet realizing eval(xi) touches the grid window boundary,
  /// i.e. the value may be biased upward by window truncation.
  bool window_contact(const Vec& xi) const;

  /// Local interpolation-gap estimate at xi: one eighth of the summed
  /// absolute second differences of the input values across xi's grid cell.
  /// +inf when an adjacent sample is infinite; requires a product grid.
  double slack_at(const Vec& xi) const;
  double max_slack() const { return max_slack_; }

  bool perturbed() const { return perturbed_; }
  double perturb_eps() const { return perturb_eps_; }

  const std::vector<LowerFacet>& facets() const { return facets_; }
  bool affine_mode() const { return affine_; }

  /// One-line provenance note for reports.
  std::string note() const;

 private:
  double chain_eval(double t) const;
  double facet_eval(const Vec& xi, bool* contact) const;

  GridFunction grid_;
  std::vector<int> finite_ids_;
  std::vector<ExtReal> env_values_;
  std::vector<LowerFacet> facets_;
  bool affine_ = false;        // lifted cloud was affinely flat
  Vec affine_grad_;
  double affine_offset_ = 0;
  // m = 1 lower chain: hull vertices as (t, v), increasing t.
  std::vector<std::pair<double, double>> chain_;
  // domain hull of finite points (m >= 2, non-box domains); nullopt when the
  // product box itself is the domain.
  std::optional<hull::Hull> domain_;
  struct BoxDomain {
    Vec lo, hi;
  };
  std::optional<BoxDomain> box_domain_;
  double domain_scale_ = 1;
  bool perturbed_ = false;
  double perturb_eps_ = 0;
  double max_slack_ = 0;
};

GridEnvelope convex_minorant_grid(GridFunction grid);

/// Convenience single-point query (builds the envelope; prefer the class for
/// repeated evaluation).
ExtReal convex_minorant_eval(const GridFunction& grid, const Vec& xi);

/// Wrap as a PhiFunction (convex by construction).
PhiFunction envelope_function(std::shared_ptr<const GridEnvelope> env);

/// CSV with one row per grid point: coordinates, input value, minorant value,
/// window-contact flag; infinities render as "inf".  Deterministic bytes.
std::string envelope_csv(const GridEnvelope& env);

}  // namespace orlicz
