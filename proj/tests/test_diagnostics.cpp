#include "sdcluster/diagnostics.hpp"
#include "sdcluster/geometry.hpp"
#include "sdcluster/scenarios.hpp"
#include "sdcluster/solver.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>

using namespace sdcluster;

namespace {

Cluster unit_square_curve() {
  Cluster c;
  c.dim = 2;
  SurfacePatch p;
  p.surface_id = 0;
  p.dim = 2;
  p.vertices = {Vec3(0, 0, 0), Vec3(1, 0, 0), Vec3(1, 1, 0), Vec3(0, 1, 0)};
  p.simplices = {{0, 1, -1}, {1, 2, -1}, {2, 3, -1}, {3, 0, -1}};
  c.patches.push_back(p);
  Region r;
  r.region_id = 0;
  r.surface_set = {0};
  r.orientation = {1};
  r.reference_point = Vec3(0.5, 0.5, 0);
  c.regions.push_back(r);
  return c;
}

}  // namespace

TEST_CASE("surface energy") {
  SUBCASE("unit square perimeter") {
    const Cluster c = unit_square_curve();
    CHECK(surface_energy(c) == doctest::Approx(4.0).epsilon(1e-15));
  }
  SUBCASE("sigma weighting and patch additivity") {
    Cluster c = make_double_bubble_2d(41);
    const double base = surface_energy(c);
    c.patches[2].sigma = 2.0;
    double chord_len = 0.0;
    for (index_t j = 0; j < c.patches[2].num_simplices(); ++j)
      chord_len += element_geometry(c.patches[2], c.patches[2].vertices, j).measure;
    CHECK(surface_energy(c) == doctest::Approx(base + chord_len).epsilon(1e-13));
  }
  SUBCASE("cusp anisotropy on the axis-aligned square") {
    Cluster c = unit_square_curve();
    c.energy.kind = EnergyModel::Kind::Anisotropic;
    const double eps = 0.25;
    c.energy.anisotropy = make_cusp_anisotropy(2, 1.0, eps);
    CHECK(surface_energy(c) == doctest::Approx(4.0 * (1.0 + eps)).epsilon(1e-14));
  }
  SUBCASE("fine polygon approximates the circle perimeter") {
    const Cluster c = make_regular_polygon_2d(1024, 1.0);
    const double exact = 2.0 * 1024.0 * std::sin(std::numbers::pi / 1024.0);
    const double e = surface_energy(c);
    CHECK(e == doctest::Approx(exact).epsilon(1e-13));
    CHECK(std::abs(e - 2.0 * std::numbers::pi) < 2e-5);
  }
  SUBCASE("rigid motion invariance") {
    Cluster c = make_double_bubble_2d(41);
    const double base = surface_energy(c);
    for (auto& p : c.patches)
      for (auto& q : p.vertices) {
        const Vec3 rotated(0.28 * q.x() - 0.96 * q.y(), 0.96 * q.x() + 0.28 * q.y(), 0.0);
        q = rotated + Vec3(5, -2, 0);
      }
    CHECK(surface_energy(c) == doctest::Approx(base).epsilon(1e-12));
  }
}

TEST_CASE("relative volume error") {
  CHECK(relative_volume_error({1.0, 2.0}, {1.0, 2.0}) == 0.0);
  CHECK(relative_volume_error({1.001, 2.004}, {1.0, 2.0}) == doctest::Approx(0.002));
  CHECK_THROWS_AS(relative_volume_error({1.0}, {0.0}), std::domain_error);
}

TEST_CASE("csv schema") {
  CHECK(csv_header(2) ==
        "t,energy_surface,energy_contact,energy_total,vol_1,vol_2,v_delta,mesh_ratio,"
        "picard_iters\n");
  CHECK(csv_header(0) ==
        "t,energy_surface,energy_contact,energy_total,v_delta,mesh_ratio,picard_iters\n");
  StepDiagnostics d;
  d.t = 0.1;
  d.energy_surface = 1.0 / 3.0;
  d.energy_contact = -0.25;
  d.energy_total = d.energy_surface + d.energy_contact;
  d.volumes = {2.0};
  d.v_delta = 1e-12;
  d.mesh_ratio = 1.5;
  d.picard_iters = 3;
  const std::string row = csv_row(d);
  CHECK(row.back() == '\n');
  CHECK(row.find("0.33333333333333331") != std::string::npos);  // 17 significant digits
  CHECK(row.find(",3\n") != std::string::npos);
}

TEST_CASE("contact energy accumulates the exact area increments") {
  Cluster c = make_drop_on_substrate(2, 33, 0.5);
  SolverConfig cfg;
  cfg.dt = 1e-3;
  Stepper stepper(c, cfg);
  double xi_total = 0.0;
  double oracle_total = 0.0;
  for (int m = 0; m < 100; ++m) {
    const Positions oldp = positions_of(c);
    stepper.step(c);
    const Positions newp = positions_of(c);
    for (index_t k = 0; k < static_cast<index_t>(c.boundaries.size()); ++k) {
      const double rho = c.boundaries[k].contact_param;
      xi_total -= rho * weighted_xi_area_form(c, oldp, newp, k);
      oracle_total -= rho * swept_contact_area_change(c, oldp, newp, k).second;
    }
  }
  CHECK(std::abs(xi_total - oracle_total) <= 1e-10);
  CHECK(xi_total < 0.0);  // wetting run
}
