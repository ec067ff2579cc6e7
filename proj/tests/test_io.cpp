#include "doctest.h"

#include <cmath>
#include <filesystem>
#include <fstream>

#include "fibrenorm/io.hpp"
#include "support.hpp"

using namespace fibrenorm;
using namespace fibrenorm::testing;

namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / "fibrenorm_test_io";
  fs::create_directories(dir);
  return dir / name;
}

}  // namespace

TEST_CASE("real formatting round trips") {
  for (double x : {0.1, 1.0 / 3.0, -2.5e-300, 6.02214076e23}) CHECK(std::stod(format_real(x)) == x);
  CHECK(std::stold(format_param(-1.7548776662466927600495L)) == -1.7548776662466927600495L);
}

TEST_CASE("non-finite doubles become null") {
  const json j = {{"a", NAN}, {"b", 1.5}};
  CHECK(dump_json(j) == "{\"a\":null,\"b\":1.5}\n");
}

TEST_CASE("series json round trip is exact") {
  const TruncatedSeries s(Disk(cplx(0.5, 0.0), 1.25, 0.06, 7),
                          {cplx(0.1, 0.2), 1.0 / 3.0, cplx(0.0, -1e-17)});
  const TruncatedSeries t = series_from_json(json::parse(dump_json(series_to_json(s, 4))));
  CHECK(t.disk() == s.disk());
  CHECK(t.coeffs() == s.coeffs());
}

TEST_CASE("cycle checkpoint round trip is exact") {
  const auto& fx = d4();
  const fs::path p = scratch("cycle.json");
  write_json(p, cycle_to_json(fx.cycle));
  const CycleSolution c = cycle_from_json(read_json(p));
  CHECK(c.map.central.coeffs() == fx.cycle.map.central.coeffs());
  CHECK(c.map.outer.coeffs() == fx.cycle.map.outer.coeffs());
  CHECK(c.beta == fx.cycle.beta);
  CHECK(c.residual == fx.cycle.residual);
  CHECK(c.map.degree == 4);
  CHECK(c.map.even_mode == fx.cycle.map.even_mode);
}

TEST_CASE("identical inputs give byte-identical checkpoints") {
  const auto& fx = d4();
  CHECK(dump_json(cycle_to_json(fx.cycle)) == dump_json(cycle_to_json(fx.cycle)));
}

TEST_CASE("corrupted checkpoints are parse errors") {
  const auto& fx = d4();
  json j = cycle_to_json(fx.cycle);
  j.erase("beta");
  try {
    (void)cycle_from_json(j);
    FAIL("expected parse error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::parse);
  }
  json k = cycle_to_json(fx.cycle);
  k["central"]["coeffs"][0] = "oops";
  CHECK_THROWS_AS(cycle_from_json(k), Error);

  const fs::path p = scratch("broken.json");
  {
    std::ofstream os(p);
    os << "{\"degree\": 4, \"beta\": ";
  }
  try {
    (void)read_json(p);
    FAIL("expected parse error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::parse);
  }
  try {
    (void)read_json(scratch("missing.json"));
    FAIL("expected io error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::io);
  }
}

TEST_CASE("hunt csv has one row per record") {
  const auto ch = fibonacci_bracket_chain(2, 5);
  const std::string csv = hunt_csv(ch);
  CHECK(csv.rfind("n,S_n,c_n,gap,ratio,signature_ok\n", 0) == 0);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 6);
  CHECK(csv.find("1,2,-1,") != std::string::npos);
}

TEST_CASE("family json round trip") {
  FamilyFile f;
  f.regions.push_back(make_region(circle_curve(0.0, 1.0, 32), 7));
  f.regions.push_back(make_region(circle_curve(3.0, 1.0, 32), 8));
  f.centers = {cplx(0.1, 0.0), std::nullopt};
  const FamilyFile g = family_from_json(json::parse(dump_json(family_to_json(f))));
  REQUIRE(g.regions.size() == 2);
  CHECK(g.regions[0].id == 7);
  CHECK(g.regions[1].boundary.vertices() == f.regions[1].boundary.vertices());
  CHECK(g.centers[0] == f.centers[0]);
  CHECK_FALSE(g.centers[1].has_value());
}

TEST_CASE("ppm output has the binary header and the pixel payload") {
  Image img(3, 2);
  img.set(1, 1, 255, 0, 10);
  const fs::path p = scratch("tiny.ppm");
  write_ppm(p, img);
  std::ifstream is(p, std::ios::binary);
  const std::string data((std::istreambuf_iterator<char>(is)), std::istreambuf_iterator<char>());
  CHECK(data.rfind("P6\n3 2\n255\n", 0) == 0);
  CHECK(data.size() == 11 + 18);
  CHECK(static_cast<unsigned char>(data[11 + 3 * 4]) == 255);
}
