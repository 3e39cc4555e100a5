#include <catch2/catch_amalgamated.hpp>
#include <cstdio>
#include <fstream>
#include <string>
#include <vector>

#include "ddc/config.hpp"

using namespace ddc;
using namespace ddc::config;

namespace {

// Writes `text` to a scratch file and returns its path.
std::string scratch_config(const std::string& text) {
  static int counter = 0;
  const std::string path =
      "config_test_scratch_" + std::to_string(counter++) + ".cfg";
  std::ofstream out(path);
  out << text;
  return path;
}

struct FileGuard {
  std::string path;
  ~FileGuard() { std::remove(path.c_str()); }
};

}  // namespace

TEST_CASE("Default stabilization weights are the midpoint choice",
          "[config]") {
  const Kappas k = default_kappas(1.0, 2.0, 0.1);
  CHECK(k.k1 == Catch::Approx(0.5));
  CHECK(k.k2 == Catch::Approx(10.0));
  CHECK(k.k3 == Catch::Approx(0.125));
  const Kappas k2 = default_kappas(1.0, 2.0, 1e-3);
  CHECK(k2.k2 == Catch::Approx(1000.0));
}

TEST_CASE("Weight admissibility warnings track each inequality", "[config]") {
  const double nu1 = 1.0, nu2 = 2.0, gamma = 0.1;
  SECTION("midpoint weights are silent") {
    CHECK(kappa_warnings(default_kappas(nu1, nu2, gamma), nu1, nu2, gamma)
              .empty());
  }
  SECTION("kappa3 ceiling: k3 < 2 nu1 / nu2^2") {
    Kappas k = default_kappas(nu1, nu2, gamma);
    k.k3 = 0.5 + 1e-9;  // just above 2*1/4
    const auto w = kappa_warnings(k, nu1, nu2, gamma);
    REQUIRE(w.size() >= 1);
    CHECK(w[0].find("kappa3") != std::string::npos);
  }
  SECTION("kappa2 ceiling: k2 < 4/gamma") {
    Kappas k = default_kappas(nu1, nu2, gamma);
    k.k2 = 40.0 + 1e-9;
    const auto w = kappa_warnings(k, nu1, nu2, gamma);
    REQUIRE(w.size() >= 1);
    CHECK(w[0].find("kappa2") != std::string::npos);
  }
  SECTION("kappa1 ceiling couples to kappa3") {
    Kappas k = default_kappas(nu1, nu2, gamma);
    // ceiling = 2*(2*nu1 - k3*nu2^2) = 2*(2 - 0.5) = 3
    k.k1 = 3.0 + 1e-9;
    const auto w = kappa_warnings(k, nu1, nu2, gamma);
    REQUIRE(w.size() >= 1);
    CHECK(w[0].find("kappa1") != std::string::npos);
  }
  SECTION("interior values just below each ceiling stay silent") {
    Kappas k{3.0 - 1e-9, 40.0 - 1e-9, 0.5 - 1e-9};
    // k1 ceiling shrinks when k3 grows; recompute: 2*(2 - (0.5-1e-9)*4) ~ 0.
    // Use a k3 comfortably inside instead.
    k.k3 = 0.125;
    k.k1 = 2.0 * (2.0 - 0.125 * 4.0) - 1e-9;
    CHECK(kappa_warnings(k, nu1, nu2, gamma).empty());
  }
  SECTION("non-positive weights warn") {
    Kappas k = default_kappas(nu1, nu2, gamma);
    k.k2 = 0.0;
    CHECK(!kappa_warnings(k, nu1, nu2, gamma).empty());
  }
}

TEST_CASE("Viscosity registry", "[config]") {
  const Vec2 x{0.5, -0.25};
  const Vec2 phi{2.0, 3.0};
  SECTION("constant") {
    CHECK(viscosity("constant:0.07")(x, phi) == Catch::Approx(0.07));
  }
  SECTION("rational ignores the fields") {
    const double expect = 1.0 / (0.25 + 0.0625 + 1.0);
    CHECK(viscosity("rational")(x, phi) == Catch::Approx(expect));
    CHECK(viscosity("rational")(x, Vec2{9.0, -9.0}) == Catch::Approx(expect));
  }
  SECTION("exponential") {
    CHECK(viscosity("exponential")(x, phi) ==
          Catch::Approx(1.0 + std::exp(-0.25)));
  }
  SECTION("affine in the transported fields") {
    CHECK(viscosity("affine_fields:0.1,2,0.5")(x, phi) ==
          Catch::Approx(0.1 + 2.0 * 2.0 + 0.5 * 3.0));
  }
  SECTION("unknown name throws") {
    CHECK_THROWS_AS(viscosity("polynomial"), std::invalid_argument);
    CHECK_THROWS_AS(viscosity("constant:abc"), std::invalid_argument);
    CHECK_THROWS_AS(viscosity("affine_fields:1,2"), std::invalid_argument);
  }
}

TEST_CASE("Built-in examples are wired with their published data",
          "[config]") {
  SECTION("example 1") {
    const Example ex = make_example(1, 0);
    CHECK(ex.id == 1);
    CHECK(ex.order == 0);
    CHECK(!ex.transient);
    CHECK(ex.problem.flow.gamma == Catch::Approx(0.1));
    CHECK(ex.problem.flow.alpha.x == Catch::Approx(0.5));
    CHECK(ex.problem.flow.alpha.y == Catch::Approx(1.5));
    CHECK(ex.problem.transport.conductivity.x == Catch::Approx(2.0));
    CHECK(ex.problem.transport.conductivity.y == Catch::Approx(2.0));
    CHECK(ex.viscosity_name == "rational");
    // Midpoint weights from nu1 = 1, nu2 = 2, gamma = 0.1.
    CHECK(ex.problem.flow.kappa1 == Catch::Approx(0.5));
    CHECK(ex.problem.flow.kappa2 == Catch::Approx(10.0));
    CHECK(ex.problem.flow.kappa3 == Catch::Approx(0.125));
    CHECK(ex.exact.has_value());
    REQUIRE(ex.mesh_for_level);
    const mesh::Mesh m0 = ex.mesh_for_level(0);
    const mesh::Mesh m1 = ex.mesh_for_level(1);
    CHECK(m1.num_triangles() == 4 * m0.num_triangles());
  }
  SECTION("example 2 defaults to second order and the L-shape") {
    const Example ex = make_example(2, 1);
    CHECK(ex.problem.flow.gamma == Catch::Approx(1e-3));
    CHECK(ex.problem.flow.kappa2 == Catch::Approx(1000.0));
    CHECK(ex.exact.has_value());
    // L-shaped domain: three quarters of the enclosing square's area.
    const mesh::Mesh m = ex.mesh_for_level(0);
    CHECK(m.total_area() == Catch::Approx(3.0));
  }
  SECTION("example 3 is transient with anisotropic diffusion") {
    const Example ex = make_example(3, 0);
    CHECK(ex.transient);
    CHECK(ex.dt == Catch::Approx(0.02));
    CHECK(ex.steps == 25);
    CHECK(ex.problem.flow.gamma == Catch::Approx(1e-3));
    CHECK(ex.problem.flow.alpha.x == Catch::Approx(1.0));
    CHECK(ex.problem.flow.alpha.y == Catch::Approx(10.0));
    CHECK(ex.problem.transport.conductivity.x == Catch::Approx(1.0));
    CHECK(ex.problem.transport.conductivity.y == Catch::Approx(0.1));
    CHECK(!ex.exact.has_value());
    REQUIRE(ex.initial_velocity);
    REQUIRE(ex.initial_transport);
  }
  SECTION("contract violations throw") {
    CHECK_THROWS_AS(make_example(0, 0), std::invalid_argument);
    CHECK_THROWS_AS(make_example(4, 0), std::invalid_argument);
    CHECK_THROWS_AS(make_example(1, 3), std::invalid_argument);
    CHECK_THROWS_AS(make_example(1, -1), std::invalid_argument);
  }
  SECTION("overrides rewire scalars and recompute default weights") {
    PhysicsOverrides ov;
    ov.gamma = 0.5;
    const Example ex = make_example(3, 0, ov);
    CHECK(ex.problem.flow.gamma == Catch::Approx(0.5));
    CHECK(ex.problem.flow.kappa2 == Catch::Approx(2.0));  // 1/gamma
  }
  SECTION("explicit weights are not recomputed") {
    PhysicsOverrides ov;
    ov.kappas = Kappas{0.1, 20.0, 0.2};
    const Example ex = make_example(1, 0, ov);
    CHECK(ex.problem.flow.kappa1 == Catch::Approx(0.1));
    CHECK(ex.problem.flow.kappa2 == Catch::Approx(20.0));
    CHECK(ex.problem.flow.kappa3 == Catch::Approx(0.2));
  }
  SECTION("viscosity override is reserved for the transient experiment") {
    PhysicsOverrides ov;
    ov.viscosity = "constant:0.05";
    ov.nu1 = 0.05;
    ov.nu2 = 0.05;
    CHECK_THROWS_AS(make_example(1, 0, ov), std::invalid_argument);
    const Example ex = make_example(3, 0, ov);
    CHECK(ex.viscosity_name == "constant:0.05");
    CHECK(ex.problem.flow.nu(Vec2{0.3, 0.7}, Vec2{1.0, 1.0}) ==
          Catch::Approx(0.05));
  }
}

TEST_CASE("Config files load, validate, and report line numbers", "[config]") {
  SECTION("a full file round-trips into a wired example") {
    FileGuard f{scratch_config(
        "# comment\n"
        "[domain]\n"
        "example = 3\n"
        "[physics]\n"
        "gamma = 0.01\n"
        "alpha = 1.0, 5.0\n"
        "conductivity = 1.0, 0.5\n"
        "viscosity = constant:0.02\n"
        "nu1 = 0.02\n"
        "nu2 = 0.02\n"
        "kappa = 0.01, 50.0, 25.0\n"
        "[discretization]\n"
        "k = 0\n"
        "levels = 3\n"
        "[solver]\n"
        "dt = 0.025\n"
        "steps = 20\n"
        "tolerance = 1e-7\n"
        "max_outer = 60\n"
        "[output]\n"
        "directory = out/custom\n"
        "vtk = true\n")};
    const FileConfig cfg = load_config(f.path);
    CHECK(cfg.example.id == 3);
    CHECK(cfg.example.order == 0);
    CHECK(cfg.example.problem.flow.gamma == Catch::Approx(0.01));
    CHECK(cfg.example.problem.flow.alpha.y == Catch::Approx(5.0));
    CHECK(cfg.example.problem.transport.conductivity.y == Catch::Approx(0.5));
    CHECK(cfg.example.dt == Catch::Approx(0.025));
    CHECK(cfg.example.steps == 20);
    CHECK(cfg.levels == 3);
    CHECK(cfg.outer_tol == Catch::Approx(1e-7));
    CHECK(cfg.max_outer == 60);
    CHECK(cfg.out_dir == "out/custom");
    CHECK(cfg.vtk);
    // kappa was set on a transient run: the per-step recomputation notice
    // must be among the warnings.
    REQUIRE(!cfg.warnings.empty());
  }
  SECTION("missing required example id") {
    FileGuard f{scratch_config("[physics]\ngamma = 0.1\n")};
    CHECK_THROWS_AS(load_config(f.path), ConfigError);
  }
  SECTION("non-positive gamma is rejected naming the field and line") {
    FileGuard f{scratch_config(
        "[domain]\nexample = 1\n[physics]\ngamma = -0.5\n")};
    try {
      load_config(f.path);
      FAIL("expected ConfigError");
    } catch (const ConfigError& e) {
      CHECK(e.line == 4);
      CHECK(std::string(e.what()).find("gamma") != std::string::npos);
    }
  }
  SECTION("unknown key reports its line") {
    FileGuard f{scratch_config("[domain]\nexample = 1\nresolution = 8\n")};
    try {
      load_config(f.path);
      FAIL("expected ConfigError");
    } catch (const ConfigError& e) {
      CHECK(e.line == 3);
      CHECK(std::string(e.what()).find("resolution") != std::string::npos);
    }
  }
  SECTION("unknown section reports its line") {
    FileGuard f{scratch_config("[domain]\nexample = 1\n[misc]\nx = 1\n")};
    try {
      load_config(f.path);
      FAIL("expected ConfigError");
    } catch (const ConfigError& e) {
      CHECK(e.line == 3);
    }
  }
  SECTION("duplicate keys are rejected") {
    FileGuard f{scratch_config("[domain]\nexample = 1\nexample = 2\n")};
    CHECK_THROWS_AS(load_config(f.path), ConfigError);
  }
  SECTION("malformed numbers are rejected with the line") {
    FileGuard f{scratch_config(
        "[domain]\nexample = 1\n[solver]\ntolerance = tiny\n")};
    try {
      load_config(f.path);
      FAIL("expected ConfigError");
    } catch (const ConfigError& e) {
      CHECK(e.line == 4);
    }
  }
  SECTION("out-of-range weights load with warnings") {
    FileGuard f{scratch_config(
        "[domain]\nexample = 1\n[physics]\nkappa = 0.5, 100.0, 0.125\n")};
    const FileConfig cfg = load_config(f.path);  // k2 > 4/gamma = 40
    REQUIRE(!cfg.warnings.empty());
    CHECK(cfg.warnings[0].find("kappa2") != std::string::npos);
    CHECK(cfg.example.problem.flow.kappa2 == Catch::Approx(100.0));
  }
  SECTION("viscosity override rejected for manufactured examples") {
    FileGuard f{scratch_config(
        "[domain]\nexample = 1\n[physics]\nviscosity = exponential\n")};
    try {
      load_config(f.path);
      FAIL("expected ConfigError");
    } catch (const ConfigError& e) {
      CHECK(e.line == 4);
    }
  }
  SECTION("time controls rejected for steady examples") {
    FileGuard f{scratch_config("[domain]\nexample = 2\n[solver]\ndt = 0.1\n")};
    CHECK_THROWS_AS(load_config(f.path), ConfigError);
  }
  SECTION("missing file is a file-level error") {
    try {
      load_config("definitely_not_here.cfg");
      FAIL("expected ConfigError");
    } catch (const ConfigError& e) {
      CHECK(e.line == 0);
    }
  }
}
