#include "doctest.h"

#include <cmath>

#include "fibrenorm/puzzle.hpp"
#include "support.hpp"

using namespace fibrenorm;
using namespace fibrenorm::testing;

namespace {

PlaneMap quadratic(cplx c) {
  return [c](cplx z) { return z * z + c; };
}

PlaneSet disk_set(double r) {
  return [r](cplx z) { return std::abs(z) <= r; };
}

}  // namespace

TEST_CASE("pullback of a radius-4 circle under z^2 is the radius-2 circle") {
  const TruncatedSeries sq(Disk(0.0, 3.0), {0.0, 0.0, 1.0});
  PullbackOptions o;
  o.critical_order = 2;
  const ClosedCurve pre = pullback_curve(sq, circle_curve(0.0, 4.0, 128), o);
  CHECK(pre.size() == 256);
  for (const cplx& w : pre.vertices()) CHECK(std::abs(w) == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(winding_number(pre, 0.0) != 0);
}

TEST_CASE("univalent pullback under a translation") {
  const TruncatedSeries t(Disk(0.0, 3.0), {cplx(0.5, 0.25), 1.0});
  PullbackOptions o;
  o.anchor = cplx(-0.5, 0.75);
  const ClosedCurve c = circle_curve(0.0, 1.0, 64);
  const ClosedCurve pre = pullback_curve(t, c, o);
  const ClosedCurve want = affine_image(c, 1.0, -cplx(0.5, 0.25));
  CHECK(hausdorff_distance(pre, want) < 1e-12);
}

TEST_CASE("a critical pullback needs the curve to wind around the critical value") {
  const TruncatedSeries sq(Disk(0.0, 3.0), {0.0, 0.0, 1.0});
  PullbackOptions o;
  o.critical_order = 2;
  try {
    (void)pullback_curve(sq, circle_curve(3.0, 1.0, 64), o);
    FAIL("expected domain error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::domain);
  }
}

TEST_CASE("filled Julia set of z^2 approximates the unit disk") {
  const double res = 0.02;
  const PointCloud k = filled_julia(quadratic(0.0), disk_set(2.0), Window{}, res, 60);
  const PointCloud disk = grid_inside(circle_curve(0.0, 1.0, 512), Window{}, res);
  CHECK_FALSE(k.too_coarse);
  CHECK(hausdorff_distance(k, disk) <= 2.0 * res);
}

TEST_CASE("filled Julia set of z^2 - 1 contains 0 and -1") {
  const double res = 0.01;
  const PointCloud k = filled_julia(quadratic(-1.0), disk_set(2.0), Window{}, res, 200);
  auto has = [&](cplx p) {
    for (const cplx& z : k.points)
      if (std::abs(z - p) < 1e-9) return true;
    return false;
  };
  CHECK(has(0.0));
  CHECK(has(-1.0));
  CHECK_FALSE(has(1.7));
}

TEST_CASE("an empty filled Julia set is reported as too coarse") {
  const PointCloud k = filled_julia(quadratic(1.0), disk_set(2.0), Window{}, 0.05, 60);
  CHECK(k.too_coarse);
}

TEST_CASE("serial and parallel escape grids are identical") {
  const Window w{-1.6, 1.6, -1.2, 1.2};
  const EscapeGrid a = escape_grid(quadratic(cplx(-0.12, 0.75)), disk_set(2.0), w, 0.01, 120);
  const EscapeGrid b =
      escape_grid(quadratic(cplx(-0.12, 0.75)), disk_set(2.0), w, 0.01, 120, Exec::parallel);
  CHECK(a.nx == b.nx);
  CHECK(a.ny == b.ny);
  CHECK(a.escape == b.escape);
}

TEST_CASE("the cycle generator satisfies the functional equation") {
  const auto& fx = d4();
  const TruncatedSeries g = cycle_generator(fx.cycle);
  const double r = functional_equation_residual(g, fx.cycle.beta);
  CHECK(r < 1e-8);
  CHECK(std::abs(g.eval(0.0)) > 1.0);
}

TEST_CASE("principal nest levels are nested and shrink") {
  const auto& fx = d4();
  const TruncatedSeries g = cycle_generator(fx.cycle);
  const double radius = 0.5 * (std::abs(g.eval(0.0)) + g.disk().inner_radius());
  const auto nest = principal_nest(fx.cycle, circle_curve(0.0, radius, 512), 4);
  REQUIRE(nest.size() == 5);
  for (std::size_t n = 1; n < nest.size(); ++n) {
    CHECK(nest[n].n == int(n));
    CHECK(curve_inside(nest[n].boundary, nest[n - 1].boundary));
    CHECK(std::fabs(nest[n].tau) < std::fabs(nest[n - 1].tau));
    CHECK(winding_number(nest[n].boundary, 0.0) != 0);
  }
}
