#include "sdcluster/assembly.hpp"
#include "sdcluster/diagnostics.hpp"
#include "sdcluster/geometry.hpp"
#include "sdcluster/scenarios.hpp"
#include "sdcluster/solver.hpp"

#include <benchmark/benchmark.h>

using namespace sdcluster;

namespace {

void BM_Assemble2d(benchmark::State& state) {
  const Cluster c = make_standard_bubble_2d(6, static_cast<index_t>(state.range(0)));
  const DofMap dm = build_dof_maps(c);
  const Positions lagged = positions_of(c);
  for (auto _ : state) {
    benchmark::DoNotOptimize(assemble(c, lagged, 1e-2, dm));
  }
  state.SetLabel("K=" + std::to_string(c.total_vertices()));
}
BENCHMARK(BM_Assemble2d)->Arg(257)->Arg(1025);

void BM_Assemble3d(benchmark::State& state) {
  const Cluster c = make_double_bubble_3d(static_cast<index_t>(state.range(0)));
  const DofMap dm = build_dof_maps(c);
  const Positions lagged = positions_of(c);
  for (auto _ : state) {
    benchmark::DoNotOptimize(assemble(c, lagged, 1e-3, dm));
  }
  state.SetLabel("K=" + std::to_string(c.total_vertices()));
}
BENCHMARK(BM_Assemble3d)->Arg(800)->Arg(3267);

void BM_AnisotropicAssemble3d(benchmark::State& state) {
  Cluster c = make_double_bubble_3d(static_cast<index_t>(state.range(0)));
  c.energy.kind = EnergyModel::Kind::Anisotropic;
  c.energy.anisotropy = make_cusp_anisotropy(3, 1.0, 0.1);
  const DofMap dm = build_dof_maps(c);
  const Positions lagged = positions_of(c);
  for (auto _ : state) {
    benchmark::DoNotOptimize(assemble(c, lagged, 1e-3, dm));
  }
}
BENCHMARK(BM_AnisotropicAssemble3d)->Arg(800);

void BM_Step2d(benchmark::State& state) {
  for (auto _ : state) {
    state.PauseTiming();
    Cluster c = make_double_bubble_2d(static_cast<index_t>(state.range(0)));
    SolverConfig cfg;
    cfg.dt = 1e-2;
    Stepper stepper(c, cfg);
    state.ResumeTiming();
    stepper.step(c);
  }
}
BENCHMARK(BM_Step2d)->Arg(129)->Arg(1025)->Unit(benchmark::kMillisecond);

void BM_Step3d(benchmark::State& state) {
  for (auto _ : state) {
    state.PauseTiming();
    Cluster c = make_double_bubble_3d(static_cast<index_t>(state.range(0)));
    SolverConfig cfg;
    cfg.dt = 1e-3;
    Stepper stepper(c, cfg);
    state.ResumeTiming();
    stepper.step(c);
  }
}
BENCHMARK(BM_Step3d)->Arg(800)->Arg(3267)->Unit(benchmark::kMillisecond);

void BM_RegionVolume(benchmark::State& state) {
  const Cluster c = make_double_bubble_3d(3267);
  for (auto _ : state) {
    benchmark::DoNotOptimize(region_volume(c, 0));
  }
}
BENCHMARK(BM_RegionVolume);

void BM_WeightedNormalField(benchmark::State& state) {
  const Cluster c = make_double_bubble_3d(3267);
  const Positions pos = positions_of(c);
  for (auto _ : state) {
    benchmark::DoNotOptimize(weighted_normal_field(c, pos, pos));
  }
}
BENCHMARK(BM_WeightedNormalField);

void BM_MeasureAngles(benchmark::State& state) {
  const Cluster c = make_double_bubble_3d(3267);
  for (auto _ : state) {
    benchmark::DoNotOptimize(measure_angles(c));
  }
}
BENCHMARK(BM_MeasureAngles);

}  // namespace

BENCHMARK_MAIN();
