/// @file grid.hpp
/// Tabulated functions on finite point sets.
///
/// A GridFunction is the discrete object the envelope and oracle modules both
/// consume: a list of distinct points in R^m with values in [0, inf].  Product
/// grids additionally record their per-axis coordinates, which unlocks cell
/// lookup, multilinear interpolation and second-difference slack estimates.
#pragma once

#include <functional>
#include <optional>

#include "orlicz/ext_real.hpp"
#include "orlicz/vec.hpp"

namespace orlicz {

struct GridFunction {
  int dim = 0;
  std::vector<Vec> points;
  std::vector<ExtReal> values;
  /// Present iff the points form the full product of these axes in row-major
  /// order (last axis fastest).
  std::optional<std::vector<std::vector<double>>> axes;

  size_t size() const { return points.size(); }

  /// Row-major flat index of a product-grid multi-index.
  size_t flat_index(const std::vector<int>& mi) const;

  /// Largest cell (per-axis lower index) whose box contains xi, or nullopt if
  /// xi lies outside the product box.  Product grids only.
  std::optional<std::vector<int>> locate_cell(const Vec& xi, double tol = 1e-12) const;

  /// Multilinear interpolation inside the box; any infinite corner value of
  /// the containing cell poisons the result to infinity.  Throws outside the
  /// box and for non-product grids.
  ExtReal interpolate(const Vec& xi) const;

  bool in_box(const Vec& xi, double tol = 1e-12) const;

  /// Throws std::invalid_argument on duplicate points, size mismatches,
  /// negative/NaN values, or an everywhere-infinite table.
  void validate() const;

  /// Full product grid sampled from f (row-major point order).
  static GridFunction product(std::vector<std::vector<double>> axes,
                              const std::function<ExtReal(const Vec&)>& f);

  static GridFunction from_points(std::vector<Vec> points, std::vector<ExtReal> values);

  /// count symmetric points spanning [-radius, radius]; odd count includes 0.
  static std::vector<double> symmetric_axis(double radius, int count);
};

}  // namespace orlicz
