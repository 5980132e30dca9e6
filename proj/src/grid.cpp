#include "orlicz/grid.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

namespace orlicz {

size_t GridFunction::flat_index(const std::vector<int>& mi) const {
  if (!axes) throw std::logic_error("flat_index: not a product grid");
  if (mi.size() != axes->size()) throw std::invalid_argument("flat_index: rank mismatch");
  size_t idx = 0;
  for (size_t a = 0; a < mi.size(); ++a) {
    const auto& ax = (*axes)[a];
    if (mi[a] < 0 || static_cast<size_t>(mi[a]) >= ax.size())
      throw std::out_of_range("flat_index: index out of range");
    idx = idx * ax.size() + static_cast<size_t>(mi[a]);
  }
  return idx;
}

std::optional<std::vector<int>> GridFunction::locate_cell(const Vec& xi, double tol) const {
  if (!axes) throw std::logic_error("locate_cell: not a product grid");
  if (xi.size() != axes->size()) throw std::invalid_argument("locate_cell: dim mismatch");
  std::vector<int> cell(axes->size());
  for (size_t a = 0; a < axes->size(); ++a) {
    const auto& ax = (*axes)[a];
    if (xi[a] < ax.front() - tol || xi[a] > ax.back() + tol) return std::nullopt;
    // upper_bound gives first coordinate > xi[a]; the cell starts one left.
    auto it = std::upper_bound(ax.begin(), ax.end(), xi[a]);
    int i = static_cast<int>(it - ax.begin()) - 1;
    i = std::clamp(i, 0, static_cast<int>(ax.size()) - 2);
    if (ax.size() == 1) i = 0;
    cell[a] = i;
  }
  return cell;
}

bool GridFunction::in_box(const Vec& xi, double tol) const {
  if (!axes) throw std::logic_error("in_box: not a product grid");
  for (size_t a = 0; a < axes->size(); ++a) {
    const auto& ax = (*axes)[a];
    if (xi[a] < ax.front() - tol || xi[a] > ax.back() + tol) return false;
  }
  return true;
}

ExtReal GridFunction::interpolate(const Vec& xi) const {
  auto cell = locate_cell(xi);
  if (!cell) throw std::domain_error("interpolate: point outside table box");
  const auto& ax = *axes;
  size_t m = ax.size();
  // Clamp barycentric weights so boundary round-off cannot extrapolate.
  std::vector<double> t(m);
  for (size_t a = 0; a < m; ++a) {
    if (ax[a].size() == 1) {
      t[a] = 0;
      continue;
    }
    double x0 = ax[a][(*cell)[a]];
    double x1 = ax[a][(*cell)[a] + 1];
    t[a] = std::clamp((xi[a] - x0) / (x1 - x0), 0.0, 1.0);
  }
  double acc = 0;
  size_t corners = size_t{1} << m;
  for (size_t mask = 0; mask < corners; ++mask) {
    std::vector<int> mi = *cell;
    double w = 1;
    for (size_t a = 0; a < m; ++a) {
      if (mask & (size_t{1} << a)) {
        if (ax[a].size() > 1) mi[a] += 1;
        w *= t[a];
      } else {
        w *= 1 - t[a];
      }
    }
    ExtReal v = values[flat_index(mi)];
    if (v.is_infinite()) return ExtReal::infinity();  // poisoned cell
    acc += w * v.value();
  }
  return ExtReal(acc);
}

void GridFunction::validate() const {
  if (dim < 1 || dim > 4) throw std::invalid_argument("GridFunction: dim must be 1..4");
  if (points.size() != values.size())
    throw std::invalid_argument("GridFunction: points/values size mismatch");
  if (points.empty()) throw std::invalid_argument("GridFunction: empty");
  bool any_finite = false;
  for (size_t i = 0; i < points.size(); ++i) {
    if (points[i].size() != static_cast<size_t>(dim))
      throw std::invalid_argument("GridFunction: point dim mismatch");
    double v = values[i].value();
    if (std::isnan(v) || v < 0)
      throw std::invalid_argument("GridFunction: values must lie in [0, inf]");
    if (values[i].is_finite()) any_finite = true;
  }
  if (!any_finite)
    throw std::invalid_argument("GridFunction: effective domain is empty (all values infinite)");
  std::map<Vec, int> seen;
  for (const auto& p : points)
    if (++seen[p] > 1) throw std::invalid_argument("GridFunction: duplicate point");
  if (axes) {
    size_t n = 1;
    for (const auto& ax : *axes) {
      if (ax.empty()) throw std::invalid_argument("GridFunction: empty axis");
      if (!std::is_sorted(ax.begin(), ax.end()) ||
          std::adjacent_find(ax.begin(), ax.end()) != ax.end())
        throw std::invalid_argument("GridFunction: axis not strictly increasing");
      n *= ax.size();
    }
    if (n != points.size())
      throw std::invalid_argument("GridFunction: product size mismatch");
  }
}

GridFunction GridFunction::product(std::vector<std::vector<double>> axes,
                                   const std::function<ExtReal(const Vec&)>& f) {
  GridFunction g;
  g.dim = static_cast<int>(axes.size());
  size_t n = 1;
  for (const auto& ax : axes) n *= ax.size();
  g.points.reserve(n);
  g.values.reserve(n);
  std::vector<int> mi(axes.size(), 0);
  for (size_t flat = 0; flat < n; ++flat) {
    Vec p(axes.size());
    for (size_t a = 0; a < axes.size(); ++a) p[a] = axes[a][static_cast<size_t>(mi[a])];
    g.points.push_back(p);
    g.values.push_back(f(p));
    for (int a = static_cast<int>(axes.size()) - 1; a >= 0; --a) {
      if (++mi[static_cast<size_t>(a)] < static_cast<int>(axes[static_cast<size_t>(a)].size()))
        break;
      mi[static_cast<size_t>(a)] = 0;
    }
  }
  g.axes = std::move(axes);
  g.validate();
  return g;
}

GridFunction GridFunction::from_points(std::vector<Vec> points, std::vector<ExtReal> values) {
  GridFunction g;
  g.dim = points.empty() ? 0 : static_cast<int>(points.front().size());
  g.points = std::move(points);
  g.values = std::move(values);
  g.validate();
  return g;
}

std::vector<double> GridFunction::symmetric_axis(double radius, int count) {
  if (count < 2) throw std::invalid_argument("symmetric_axis: need at least 2 points");
  if (!(radius > 0)) throw std::invalid_argument("symmetric_axis: radius must be positive");
  std::vector<double> ax(static_cast<size_t>(count));
  for (int i = 0; i < count; ++i)
    ax[static_cast<size_t>(i)] = -radius + 2 * radius * i / (count - 1);
  if (count % 2 == 1) ax[static_cast<size_t>(count / 2)] = 0.0;  // exact center
  return ax;
}

}  // namespace orlicz
