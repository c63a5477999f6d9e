#include "sdcluster/diagnostics.hpp"
#include "sdcluster/scenarios.hpp"
#include "sdcluster/solver.hpp"

#include <doctest.h>

#include <cmath>

using namespace sdcluster;

TEST_CASE("discrete equilibria stay put") {
  SUBCASE("flat plate with neutral boundary") {
    Cluster c = make_flat_plate(150);
    SolverConfig cfg;
    cfg.dt = 1e-2;
    Stepper stepper(c, cfg);
    const StepReport rep = stepper.step(c);
    CHECK(rep.max_displacement < 1e-12);
    CHECK(rep.picard_iters == 1);
    for (double k : stepper.last_kappa()[0]) CHECK(std::abs(k) < 1e-10);
  }
  SUBCASE("regular polygons with the analytic discrete curvature") {
    for (const index_t n : {4, 8, 32}) {
      for (const double sigma : {1.0, 1.7}) {
        Cluster c = make_regular_polygon_2d(n, 1.0);
        c.patches[0].sigma = sigma;
        SolverConfig cfg;
        cfg.dt = 5e-3;
        Stepper stepper(c, cfg);
        const StepReport rep = stepper.step(c);
        CHECK(rep.max_displacement < 1e-11);
        const double expected = -sigma / std::cos(std::numbers::pi / n);
        for (double k : stepper.last_kappa()[0])
          CHECK(k == doctest::Approx(expected).epsilon(1e-10));
      }
    }
  }
}

TEST_CASE("BGN mode is SP mode with a single Picard iteration") {
  Cluster a = make_double_bubble_2d(41);
  Cluster b = make_double_bubble_2d(41);
  SolverConfig cfg_a;
  cfg_a.dt = 1e-2;
  cfg_a.mode = SolverConfig::Mode::BGN;
  SolverConfig cfg_b;
  cfg_b.dt = 1e-2;
  cfg_b.mode = SolverConfig::Mode::SP;
  cfg_b.picard_max = 1;
  Stepper sa(a, cfg_a);
  Stepper sb(b, cfg_b);
  for (int m = 0; m < 10; ++m) {
    sa.step(a);
    sb.step(b);
  }
  for (index_t i = 0; i < a.num_patches(); ++i)
    for (index_t k = 0; k < a.patches[i].num_vertices(); ++k)
      CHECK((a.patches[i].vertices[k] - b.patches[i].vertices[k]).norm() == 0.0);
}

TEST_CASE("SP conserves the volumes that BGN loses") {
  const int steps = 40;
  auto run_mode = [&](SolverConfig::Mode mode) {
    Cluster c = make_double_bubble_2d(65);
    SolverConfig cfg;
    cfg.dt = 1e-2;
    cfg.mode = mode;
    Stepper stepper(c, cfg);
    std::vector<double> vol0 = region_volumes(c);
    double worst = 0.0;
    for (int m = 0; m < steps; ++m) {
      stepper.step(c);
      worst = std::max(worst, relative_volume_error(region_volumes(c), vol0));
    }
    return worst;
  };
  const double sp = run_mode(SolverConfig::Mode::SP);
  const double bgn = run_mode(SolverConfig::Mode::BGN);
  CHECK(sp <= 1e-10);
  CHECK(bgn > 1e-7);
  CHECK(bgn > 100.0 * sp);
}

TEST_CASE("anisotropic runs decay the anisotropic energy and conserve volume") {
  Cluster c = make_regular_polygon_2d(48, 1.0);
  c.energy.kind = EnergyModel::Kind::Anisotropic;
  c.energy.anisotropy = make_rotation_anisotropy_2d(2, 0.1);
  SolverConfig cfg;
  cfg.dt = 2e-3;
  Stepper stepper(c, cfg);
  const double vol0 = region_volume(c, 0);
  const double e0 = surface_energy(c);
  double prev = e0;
  for (int m = 0; m < 25; ++m) {
    stepper.step(c);
    const double e = surface_energy(c);
    CHECK(e <= prev + 1e-12);
    prev = e;
    CHECK(std::abs(region_volume(c, 0) - vol0) <= 1e-10 * vol0);
  }
  // faceting toward the Wulff shape strictly reduces the anisotropic energy
  CHECK(prev < e0 - 1e-3);
}

TEST_CASE("non-neutral boundaries decrease the total energy") {
  Cluster c = make_drop_on_substrate(2, 41, 0.5);
  RunConfig cfg;
  cfg.solver.dt = 1e-3;
  cfg.t_final = 0.05;
  const auto trajectory = run(c, cfg);
  REQUIRE(trajectory.size() == 51);
  for (size_t m = 1; m < trajectory.size(); ++m) {
    CHECK(trajectory[m].energy_total <= trajectory[m - 1].energy_total + 1e-12);
    CHECK(trajectory[m].v_delta <= 1e-10);
  }
  // the contact line moved outward, so contact energy became negative
  CHECK(trajectory.back().energy_contact < -1e-6);
  CHECK(trajectory.back().energy_total ==
        doctest::Approx(trajectory.back().energy_surface + trajectory.back().energy_contact));
}

TEST_CASE("the double bubble settles toward its steady state") {
  Cluster c = make_double_bubble_2d(129);
  SolverConfig cfg;
  cfg.dt = 1e-2;
  Stepper stepper(c, cfg);
  double at_half = 0.0, at_end = 0.0;
  for (int m = 1; m <= 200; ++m) {
    const double disp = stepper.step(c).max_displacement;
    if (m == 50) at_half = disp;
    if (m == 200) at_end = disp;
  }
  // exponential relaxation: visually steady by T=2 and still decaying
  CHECK(at_end / cfg.dt < 1e-2);
  CHECK(at_end < 0.1 * at_half);
}

TEST_CASE("runs are deterministic") {
  auto run_once = [] {
    Cluster c = make_standard_bubble_2d(3, 90);
    RunConfig cfg;
    cfg.solver.dt = 1e-2;
    cfg.t_final = 0.1;
    std::string csv = csv_header(static_cast<index_t>(c.regions.size()));
    RunSinks sinks;
    sinks.on_diagnostics = [&](const StepDiagnostics& d) { csv += csv_row(d); };
    run(c, cfg, sinks);
    return csv;
  };
  CHECK(run_once() == run_once());
}

TEST_CASE("minres option reproduces the direct solve") {
  auto advance = [](SolverConfig::LinearSolver solver) {
    Cluster c = make_double_bubble_2d(33);
    SolverConfig cfg;
    cfg.dt = 1e-2;
    cfg.linear_solver = solver;
    Stepper stepper(c, cfg);
    for (int m = 0; m < 3; ++m) stepper.step(c);
    return positions_of(c);
  };
  const auto direct = advance(SolverConfig::LinearSolver::Direct);
  const auto minres = advance(SolverConfig::LinearSolver::Minres);
  for (size_t i = 0; i < direct.size(); ++i)
    for (size_t k = 0; k < direct[i].size(); ++k)
      CHECK((direct[i][k] - minres[i][k]).norm() < 1e-7);
}

TEST_CASE("run bookkeeping") {
  SUBCASE("zero steps emit only the initial diagnostics") {
    Cluster c = make_regular_polygon_2d(12, 1.0);
    RunConfig cfg;
    cfg.solver.dt = 1e-2;
    cfg.t_final = 0.0;
    const auto trajectory = run(c, cfg);
    REQUIRE(trajectory.size() == 1);
    CHECK(trajectory[0].t == 0.0);
    CHECK(trajectory[0].picard_iters == 0);
    CHECK(trajectory[0].v_delta == 0.0);
  }
  SUBCASE("T_final must sit on the step grid") {
    Cluster c = make_regular_polygon_2d(12, 1.0);
    RunConfig cfg;
    cfg.solver.dt = 1e-2;
    cfg.t_final = 0.0251;
    CHECK_THROWS_AS(run(c, cfg), std::invalid_argument);
  }
  SUBCASE("frames are emitted at the requested times") {
    Cluster c = make_regular_polygon_2d(12, 1.0);
    RunConfig cfg;
    cfg.solver.dt = 1e-2;
    cfg.t_final = 0.05;
    cfg.frame_times = {0.0, 0.02, 0.05};
    std::vector<double> seen;
    RunSinks sinks;
    sinks.on_frame = [&](double t, const Cluster&) { seen.push_back(t); };
    run(c, cfg, sinks);
    REQUIRE(seen.size() == 3);
    CHECK(seen[0] == doctest::Approx(0.0));
    CHECK(seen[1] == doctest::Approx(0.02));
    CHECK(seen[2] == doctest::Approx(0.05));
  }
}

TEST_CASE("a degenerating configuration fails with a clear step error") {
  // collapse one curve of a double bubble to nearly zero length so the step
  // aborts rather than silently producing garbage
  Cluster c = make_double_bubble_2d(33);
  auto& p = c.patches[2];
  const Vec3 lo = p.vertices.front();
  const Vec3 hi = p.vertices.back();
  for (index_t k = 0; k < p.num_vertices(); ++k) {
    const double t = static_cast<double>(k) / (p.num_vertices() - 1);
    p.vertices[k] = lo + 1e-15 * t * (hi - lo);
  }
  SolverConfig cfg;
  cfg.dt = 1e-2;
  CHECK_THROWS_AS(
      [&] {
        Stepper stepper(c, cfg);
        stepper.step(c);
      }(),
      std::runtime_error);
}
