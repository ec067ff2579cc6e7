#include "doctest.h"

#include <cmath>

#include "fibrenorm/covering.hpp"
#include "support.hpp"

using namespace fibrenorm;
using namespace fibrenorm::testing;

namespace {

Region disk_region(cplx c, double r, int id) { return make_region(circle_curve(c, r, 64), id); }

}  // namespace

TEST_CASE("regions reject self-intersecting and degenerate boundaries") {
  std::vector<cplx> eight;
  for (int j = 0; j < 64; ++j) {
    const double t = 6.283185307179586 * j / 64;
    eight.emplace_back(std::sin(t), std::sin(2.0 * t) / 2.0);
  }
  try {
    (void)make_region(ClosedCurve(eight), 1);
    FAIL("expected malformed input");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::malformed_input);
  }
  CHECK_THROWS_AS(make_centered(disk_region(0.0, 1.0, 1), 3.0), Error);
}

TEST_CASE("relation trichotomy on nested, disjoint and overlapping disks") {
  const Region a = disk_region(0.0, 2.0, 1);
  const Region b = disk_region(0.5, 0.5, 2);
  const Region c = disk_region(5.0, 1.0, 3);
  const Region d = disk_region(1.5, 1.0, 4);
  CHECK(relate(a, b) == RegionRelation::second_inside);
  CHECK(relate(b, a) == RegionRelation::first_inside);
  CHECK(relate(a, c) == RegionRelation::disjoint);
  CHECK(relate(a, d) == RegionRelation::overlap);
}

TEST_CASE("markov check reports the first violating pair") {
  const std::vector<Region> good{disk_region(0.0, 2.0, 1), disk_region(0.5, 0.5, 2),
                                 disk_region(5.0, 1.0, 3)};
  CHECK(markov_check(good).ok);
  std::vector<Region> bad = good;
  bad.push_back(disk_region(1.5, 1.0, 4));
  const MarkovCheck m = markov_check(bad);
  CHECK_FALSE(m.ok);
  REQUIRE(m.counterexample.has_value());
  CHECK(m.counterexample->first == 1);
  CHECK(m.counterexample->second == 4);
}

TEST_CASE("markov family parents are minimal containers") {
  const MarkovFamily f = make_markov_family(
      {disk_region(0.0, 4.0, 1), disk_region(0.0, 2.0, 2), disk_region(0.5, 0.5, 3),
       disk_region(10.0, 1.0, 4)});
  CHECK(f.parent == std::vector<int>{-1, 0, 1, -1});
  CHECK_THROWS_AS(make_markov_family({disk_region(0.0, 1.0, 1), disk_region(0.5, 1.0, 2)}),
                  Error);
}

TEST_CASE("markov subfamily keeps maximal containers and reports uncovered points") {
  const MarkovFamily f = make_markov_family(
      {disk_region(0.0, 4.0, 1), disk_region(0.0, 2.0, 2), disk_region(10.0, 1.0, 3)});
  const std::vector<cplx> targets{0.1, 10.2};
  const MarkovFamily s = markov_subfamily(f, targets);
  REQUIRE(s.regions.size() == 2);
  CHECK(s.regions[0].id == 1);
  CHECK(s.regions[1].id == 3);
  const std::vector<cplx> lost{cplx(20.0, 0.0)};
  try {
    (void)markov_subfamily(f, lost);
    FAIL("expected coverage error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::coverage);
  }
}

TEST_CASE("covering at arbitrarily small scales") {
  std::vector<Region> fam;
  for (int k = 0; k < 6; ++k) fam.push_back(disk_region(0.0, std::pow(0.5, k), k));
  const std::vector<cplx> pts{0.0};
  const std::vector<double> scales{1.0, 0.3, 0.1};
  CHECK(covers_arbitrary_small_scales(fam, pts, scales).all);
  const std::vector<double> tiny{1e-3};
  CHECK_FALSE(covers_arbitrary_small_scales(fam, pts, tiny).all);
}

TEST_CASE("bounded geometry modes") {
  const std::vector<Region> fam{make_region(rectangle_curve(0.0, 1.0, 1.0, 64), 1),
                                make_region(rectangle_curve(0.0, 10.0, 1.0, 88), 2)};
  const GeometryStats u = bounded_geometry(fam, 201);
  CHECK(u.worst == doctest::Approx(0.5 / std::sqrt(101.0)).epsilon(1e-6));
  CHECK(u.worst_index == 1);

  const std::vector<CenteredRegion> centred{
      make_centered(disk_region(0.0, 1.0, 1), 0.0),
      make_centered(disk_region(0.0, 1.0, 2), 0.5)};
  const GeometryStats p = bounded_geometry(centred, GeometryMode::pointwise);
  CHECK(p.values[0] == doctest::Approx(0.5).epsilon(1e-3));
  CHECK(p.values[1] == doctest::Approx(0.25).epsilon(1e-3));
  CHECK(p.worst_index == 1);

  const std::vector<double> scales{2.0, 1.0};
  const GeometryStats a = bounded_geometry(centred, GeometryMode::all_scales, scales);
  CHECK(a.values.size() == 2);
  CHECK(a.worst == doctest::Approx(2.0).epsilon(1e-3));

  CHECK_THROWS_AS(bounded_geometry(std::span<const Region>{}), Error);
}

TEST_CASE("circular dilatation of similarities and a stretch") {
  const PlaneHomeo sim = [](cplx z) { return cplx(0.6, 0.8) * 3.0 * z + cplx(1.0, -2.0); };
  CHECK(std::fabs(circular_dilatation(sim, cplx(0.3, 0.1), 0.25) - 1.0) < 1e-10);
  const PlaneHomeo stretch = [](cplx z) { return cplx(2.0 * z.real(), z.imag()); };
  CHECK(std::fabs(circular_dilatation(stretch, 0.0, 1.0) - 2.0) < 1e-6);
  const PlaneHomeo collapse = [](cplx) { return cplx(1.0, 2.0); };
  try {
    (void)circular_dilatation(collapse, 0.0, 1.0);
    FAIL("expected degenerate map");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::degenerate_map);
  }
}
