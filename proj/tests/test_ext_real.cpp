#include "doctest.h"

#include <cmath>

#include "orlicz/ext_real.hpp"

using namespace orlicz;

TEST_CASE("ext_real basic states") {
  ExtReal zero;
  CHECK(zero.value() == 0.0);
  CHECK(zero.is_finite());

  ExtReal inf = ExtReal::infinity();
  CHECK(inf.is_infinite());
  CHECK(!inf.is_finite());
  CHECK(std::isinf(inf.value()));
  CHECK_THROWS_AS(inf.finite(), std::domain_error);
  CHECK(ExtReal(1.5).finite() == 1.5);
}

TEST_CASE("scale and mul use the 0 * inf = 0 convention") {
  ExtReal inf = ExtReal::infinity();
  CHECK(scale(0.0, inf).value() == 0.0);
  CHECK(scale(2.0, inf).is_infinite());
  CHECK(scale(0.5, ExtReal(3.0)).value() == 1.5);
  CHECK(mul(ExtReal(0.0), inf).value() == 0.0);
  CHECK(mul(inf, ExtReal(0.0)).value() == 0.0);
  CHECK(mul(inf, ExtReal(2.0)).is_infinite());
  CHECK(mul(ExtReal(2.0), ExtReal(3.0)).value() == 6.0);
}

TEST_CASE("addition and ordering on the half line") {
  ExtReal inf = ExtReal::infinity();
  CHECK((ExtReal(1.0) + inf).is_infinite());
  CHECK((inf + inf).is_infinite());
  CHECK((ExtReal(1.0) + ExtReal(2.0)).value() == 3.0);
  CHECK(ExtReal(1.0) < inf);
  CHECK(inf <= inf);
  CHECK(orlicz::min(ExtReal(2.0), inf).value() == 2.0);
  CHECK(orlicz::max(ExtReal(2.0), inf).is_infinite());
}

TEST_CASE("leq_tol absorbs infinite bounds") {
  ExtReal inf = ExtReal::infinity();
  CHECK(leq_tol(ExtReal(1.0), ExtReal(2.0), 0.0));
  CHECK(leq_tol(ExtReal(2.0 + 1e-12), ExtReal(2.0), 1e-9));
  CHECK(!leq_tol(ExtReal(2.1), ExtReal(2.0), 1e-9));
  CHECK(leq_tol(ExtReal(5.0), inf, 0.0));
  CHECK(leq_tol(inf, inf, 0.0));
  CHECK(!leq_tol(inf, ExtReal(5.0), 1e-3));
}

TEST_CASE("close_tol treats infinity as its own point") {
  ExtReal inf = ExtReal::infinity();
  CHECK(close_tol(inf, inf, 0.0));
  CHECK(!close_tol(inf, ExtReal(1e300), 1e9));
  CHECK(close_tol(ExtReal(1.0), ExtReal(1.0 + 5e-10), 1e-9));
  CHECK(!close_tol(ExtReal(1.0), ExtReal(1.01), 1e-9));
}

TEST_CASE("to_string renders infinity as inf") {
  CHECK(to_string(ExtReal::infinity()) == "inf");
  CHECK(to_string(ExtReal(0.5)) == "0.5");
  CHECK(to_string(ExtReal(0.0)) == "0");
}
