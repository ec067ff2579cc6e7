#include "doctest.h"

#include <filesystem>
#include <fstream>

#include "config.hpp"

using namespace fibrenorm;

TEST_CASE("toml subset parses sections, arrays and comments") {
  const TomlTable t = parse_toml(
      "# run file\n"
      "degree = 4\n"
      "output_dir = \"out\"\n"
      "[disks]\n"
      "u0_radius = 1.6  # wider\n"
      "u1_center = [2.5, 0.0]\n"
      "[nest]\n"
      "vertices = 256\n");
  CHECK(std::get<double>(t.at("degree")) == 4.0);
  CHECK(std::get<std::string>(t.at("output_dir")) == "out");
  CHECK(std::get<double>(t.at("disks.u0_radius")) == 1.6);
  CHECK(std::get<std::vector<double>>(t.at("disks.u1_center")) == std::vector<double>{2.5, 0.0});
  CHECK(std::get<double>(t.at("nest.vertices")) == 256.0);
}

TEST_CASE("toml syntax errors are usage errors") {
  for (const char* bad : {"degree 4\n", "[disks\n", "x = [1, \"a\"]\n", "s = \"open\n"}) {
    try {
      (void)parse_toml(bad);
      FAIL("expected usage error for " << bad);
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::usage);
    }
  }
}

TEST_CASE("table values override the degree defaults") {
  TomlTable t;
  t["truncation_order"] = 70.0;
  t["disks.u0_radius"] = 1.6;
  t["tolerances.drift"] = 1e-4;
  t["nest.gamma0_radius"] = 2.8;
  const RunConfig c = config_from_table(t, 4);
  CHECK(c.setup.degree == 4);
  CHECK(c.setup.order == 70);
  CHECK(c.setup.u0.radius == 1.6);
  CHECK(c.setup.u1.center == default_setup(4).u1.center);
  CHECK(c.setup.drift_tol == 1e-4);
  CHECK(c.setup.gamma0_radius.value() == 2.8);
}

TEST_CASE("unknown keys and wrong types are rejected") {
  TomlTable t;
  t["tolerances.newtn"] = 1e-12;
  CHECK_THROWS_AS(config_from_table(t, 4), Error);
  TomlTable u;
  u["truncation_order"] = std::string("sixty");
  CHECK_THROWS_AS(config_from_table(u, 4), Error);
  TomlTable v;
  v["truncation_order"] = 60.5;
  CHECK_THROWS_AS(config_from_table(v, 4), Error);
}

TEST_CASE("odd degrees are usage errors") {
  TomlTable t;
  t["degree"] = 3.0;
  try {
    (void)config_from_table(t, 4);
    FAIL("expected usage error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::usage);
  }
}

TEST_CASE("validation catches non-positive tolerances") {
  RunConfig c = config_from_table({}, 4);
  CHECK_NOTHROW(validate_config(c));
  c.setup.residual_tol = 0.0;
  CHECK_THROWS_AS(validate_config(c), Error);
}

TEST_CASE("load_config reads a file and lets the command-line degree win") {
  const auto p = std::filesystem::temp_directory_path() / "fibrenorm_test_config.toml";
  {
    std::ofstream os(p);
    os << "degree = 4\n[depths]\nnest_depth = 5\n";
  }
  CHECK(load_config(p, std::nullopt).setup.nest_depth == 5);
  CHECK(load_config(p, 6).setup.degree == 6);
  CHECK_THROWS_AS(load_config(p.string() + ".missing", std::nullopt), Error);
}
