#include "doctest.h"

#include <cmath>

#include "orlicz/envelope.hpp"
#include "orlicz/grid.hpp"
#include "orlicz/phi_function.hpp"

using namespace orlicz;

namespace {

PhiFunction min_quad() {
  return PhiFunction::min_of({PhiFunction::diag_quadratic({1.0, 0.0}),
                              PhiFunction::diag_quadratic({0.0, 1.0})});
}

GridFunction sample_product(const PhiFunction& phi, double radius, int count) {
  std::vector<std::vector<double>> axes(phi.dim(), GridFunction::symmetric_axis(radius, count));
  return GridFunction::product(axes, [&](const Vec& xi) { return phi(xi); });
}

}  // namespace

TEST_CASE("symmetric_axis spans the window and hits zero") {
  auto ax = GridFunction::symmetric_axis(2.0, 33);
  REQUIRE(ax.size() == 33);
  CHECK(ax.front() == -2.0);
  CHECK(ax.back() == 2.0);
  CHECK(ax[16] == 0.0);
  for (size_t i = 1; i < ax.size(); ++i)
    CHECK(ax[i] - ax[i - 1] == doctest::Approx(0.125).epsilon(1e-12));
}

TEST_CASE("product grids order points row-major, last axis fastest") {
  GridFunction g = GridFunction::product(
      {{0.0, 1.0}, {0.0, 1.0, 2.0}},
      [](const Vec& xi) { return ExtReal(10.0 * xi[0] + xi[1]); });
  REQUIRE(g.size() == 6);
  CHECK(g.points[0] == Vec{0.0, 0.0});
  CHECK(g.points[1] == Vec{0.0, 1.0});
  CHECK(g.points[3] == Vec{1.0, 0.0});
  CHECK(g.flat_index({1, 2}) == 5);
  CHECK(g.values[5].value() == 12.0);

  auto cell = g.locate_cell({0.5, 1.5});
  REQUIRE(cell.has_value());
  CHECK((*cell)[0] == 0);
  CHECK((*cell)[1] == 1);
  // the upper corner still resolves to the last cell
  auto corner = g.locate_cell({1.0, 2.0});
  REQUIRE(corner.has_value());
  CHECK((*corner)[0] == 0);
  CHECK((*corner)[1] == 1);
  CHECK(!g.locate_cell({1.5, 0.0}).has_value());
}

TEST_CASE("interpolation is exact at nodes and poisoned by infinite corners") {
  GridFunction g = GridFunction::product(
      {{0.0, 1.0, 2.0}, {0.0, 1.0}},
      [](const Vec& xi) { return ExtReal(xi[0] + 2.0 * xi[1]); });
  CHECK(g.interpolate({2.0, 1.0}).value() == doctest::Approx(4.0).epsilon(1e-12));
  CHECK(g.interpolate({0.5, 0.5}).value() == doctest::Approx(1.5).epsilon(1e-12));

  // An infinite corner poisons its whole cell, nodes included, but not the
  // neighboring cell.
  g.values[5] = ExtReal::infinity();  // corner (2,1)
  CHECK(g.interpolate({1.5, 0.5}).is_infinite());
  CHECK(g.interpolate({2.0, 0.0}).is_infinite());
  CHECK(g.interpolate({0.5, 0.5}).value() == doctest::Approx(1.5).epsilon(1e-12));
  CHECK(g.interpolate({0.0, 0.0}).value() == 0.0);
}

TEST_CASE("grid validation rejects malformed tables at construction") {
  CHECK_THROWS_AS(
      GridFunction::from_points({{0.0, 0.0}, {0.0, 0.0}}, {ExtReal(0), ExtReal(1)}),
      std::invalid_argument);
  CHECK_THROWS_AS(
      GridFunction::from_points({{0.0, 0.0}, {1.0, 0.0}}, {ExtReal(0), ExtReal(-1)}),
      std::invalid_argument);
  CHECK_THROWS_AS(GridFunction::from_points({{0.0, 0.0}, {1.0, 0.0}},
                                            {ExtReal::infinity(), ExtReal::infinity()}),
                  std::invalid_argument);
}

TEST_CASE("1d minorant of min(t, t^2): chord through 1/2 and the window edge") {
  // Support 0, 0.5, ..., 5.  The lower chain keeps (0,0), (0.5,0.25), (5,5);
  // at t=1 the chord from 0.5 to 5 gives exactly 7/9.
  std::vector<double> axis;
  for (int k = 0; k <= 10; ++k) axis.push_back(0.5 * k);
  GridFunction g = GridFunction::product(
      {axis}, [](const Vec& xi) { return ExtReal(std::min(xi[0], xi[0] * xi[0])); });
  GridEnvelope env(g);
  CHECK(env.eval({1.0}).value() == doctest::Approx(7.0 / 9.0).epsilon(1e-12));
  CHECK(env.eval({0.5}).value() == doctest::Approx(0.25).epsilon(1e-12));
  CHECK(env.eval({0.25}).value() == doctest::Approx(0.125).epsilon(1e-12));
  CHECK(env.eval({5.0}).value() == doctest::Approx(5.0).epsilon(1e-12));
}

TEST_CASE("1d window growth: widening the window drains the dip") {
  // Same integrand on [0,50] with 101 points: the chord endpoint moves to 50
  // and the value at 1 rises to 149/198, within 0.3% of the true minorant 3/4
  // (the untruncated envelope is the chord to infinity, i.e. t itself).
  std::vector<double> axis;
  for (int k = 0; k <= 100; ++k) axis.push_back(0.5 * k);
  GridFunction g = GridFunction::product(
      {axis}, [](const Vec& xi) { return ExtReal(std::min(xi[0], xi[0] * xi[0])); });
  GridEnvelope env(g);
  double v = env.eval({1.0}).value();
  CHECK(v == doctest::Approx(149.0 / 198.0).epsilon(1e-12));
  CHECK(std::abs(v - 0.75) < 0.003);
}

TEST_CASE("paraboloid: envelope equals samples at nodes, slack closes cell gaps") {
  PhiFunction phi = PhiFunction::power(2, 2.0);
  GridFunction g = sample_product(phi, 2.0, 33);
  GridEnvelope env(g);

  double worst = 0;
  for (size_t k = 0; k < g.size(); ++k)
    worst = std::max(worst, std::abs(env.values()[k].value() - g.values[k].value()));
  CHECK(worst <= 1e-9);

  // Cell center next to the origin: the four corners are coplanar, so the
  // facet value is the chord average and the second-difference slack exactly
  // covers the sampling gap.
  Vec mid{0.0625, 0.0625};
  double f = 2.0 * 0.0625 * 0.0625;
  CHECK(env.eval(mid).value() == doctest::Approx(0.015625).epsilon(1e-12));
  CHECK(env.slack_at(mid) == doctest::Approx(0.0078125).epsilon(1e-12));
  CHECK(env.eval(mid).value() - env.slack_at(mid) <= f + 1e-12);
  CHECK(env.eval(mid).value() >= f - 1e-12);

  CHECK(!env.window_contact({0.05, 0.03}));
  CHECK(std::isinf(env.slack_at({3.0, 0.0})));  // outside the window
}

TEST_CASE("min-quad minorant vanishes on the diamond and feels the window") {
  GridFunction g = sample_product(min_quad(), 2.0, 33);
  GridEnvelope env(g);

  // |xi_1| + |xi_2| <= 2 is inside the convex hull of the two zero parabolas'
  // sampled zero sets, so the minorant vanishes there.
  CHECK(env.eval({1.0, 1.0}).value() <= 1e-9);
  CHECK(env.eval({-1.0, 1.0}).value() <= 1e-9);
  CHECK(env.eval({0.25, 0.25}).value() <= 1e-9);
  CHECK(env.eval({0.0, 0.0}).value() == 0.0);

  // Window truncation: the restricted minorant is positive near the corner.
  // At (1.875, 1.875) the best window combination is the midpoint of
  // (2, 1.75) and (1.75, 2), value (3.0625 + 3.0625)/2.
  CHECK(env.eval({1.875, 1.875}).value() == doctest::Approx(3.0625).epsilon(1e-9));
  CHECK(env.eval({2.0, 2.0}).value() == doctest::Approx(4.0).epsilon(1e-9));
  CHECK(env.window_contact({1.875, 1.875}));

  CHECK(env.max_slack() > 0.05);
  CHECK(env.max_slack() < 0.25);
}

TEST_CASE("affinely flat samples fall back to the exact plane") {
  GridFunction g = GridFunction::product(
      {GridFunction::symmetric_axis(2.0, 9), GridFunction::symmetric_axis(2.0, 9)},
      [](const Vec& xi) { return ExtReal(xi[0] + xi[1] + 5.0); });
  GridEnvelope env(g);
  CHECK(env.affine_mode());
  CHECK(env.eval({0.3, 0.4}).value() == doctest::Approx(5.7).epsilon(1e-9));
  CHECK(env.eval({-1.5, 0.5}).value() == doctest::Approx(4.0).epsilon(1e-9));
}

TEST_CASE("infinite samples restrict the domain instead of the values") {
  PhiFunction ind = PhiFunction::linf_indicator(2, 0.5);
  GridFunction g = sample_product(ind, 2.0, 17);
  GridEnvelope env(g);
  // finite samples live in the l^1/2 ball; their hull is the l^1 ball
  CHECK(env.eval({0.9, 0.0}).value() <= 1e-12);
  CHECK(env.eval({0.4, 0.4}).value() <= 1e-12);
  CHECK(env.eval({1.5, 1.5}).is_infinite());
  CHECK(!env.in_domain({1.5, 1.5}));
  CHECK(env.in_domain({0.5, 0.25}));

  std::string csv = envelope_csv(env);
  CHECK(csv.rfind("xi_1,xi_2,value,minorant,window_contact\n", 0) == 0);
  CHECK(csv.find("inf") != std::string::npos);
  CHECK(csv == envelope_csv(GridEnvelope(sample_product(ind, 2.0, 17))));
}

TEST_CASE("grid refinement can only lower the minorant at shared points") {
  GridFunction coarse = sample_product(min_quad(), 2.0, 17);
  GridFunction fine = sample_product(min_quad(), 2.0, 33);
  GridEnvelope ec(coarse), ef(fine);
  for (size_t k = 0; k < coarse.size(); ++k) {
    double c = ec.values()[k].value();
    double f = ef.eval(coarse.points[k]).value();
    CHECK(f <= c + 1e-9);
  }
}

TEST_CASE("single-point query and PhiFunction wrapper agree with the class") {
  GridFunction g = sample_product(min_quad(), 2.0, 9);
  GridEnvelope env(g);
  CHECK(convex_minorant_eval(g, {0.5, 0.5}).value() ==
        doctest::Approx(env.eval({0.5, 0.5}).value()).epsilon(1e-12));

  auto shared = std::make_shared<const GridEnvelope>(GridEnvelope(g));
  PhiFunction wrapped = envelope_function(shared);
  CHECK(wrapped.dim() == 2);
  CHECK(wrapped.convex());
  CHECK(wrapped({1.25, 0.25}).value() ==
        doctest::Approx(env.eval({1.25, 0.25}).value()).epsilon(1e-12));
}
