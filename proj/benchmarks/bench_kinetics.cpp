// Microbenchmarks for the hot paths: pair-table construction, the collision
// rate sweep, the exponential step, transport, projection, and the
// interaction functional. The velocity resolution is the benchmark argument
// where it dominates the cost.

#include <benchmark/benchmark.h>

#include "anyon/collision.hpp"
#include "anyon/diagnostics.hpp"
#include "anyon/field.hpp"
#include "anyon/grid.hpp"
#include "anyon/haldane.hpp"
#include "anyon/presets.hpp"
#include "anyon/solver.hpp"

using namespace anyon;

namespace {

SimulationParams params_for(int nv, int nx = 4) {
  SimulationParams p;
  p.alpha = 0.5;
  p.nx = nx;
  p.nv = nv;
  p.ntheta = 8;
  p.j = 4.0;
  return p;
}

struct Bench {
  SimulationParams p;
  PhaseGrid g;
  CollisionKernel k;
  PairTable t;
  DistributionField f;
  explicit Bench(const SimulationParams& params)
      : p(params),
        g(make_grid(p)),
        k(make_kernel(p, g)),
        t(build_pair_table(g, k)),
        f(preset_bimodal(g, p.alpha, BimodalSpec{})) {}
};

}  // namespace

static void BM_pair_table(benchmark::State& state) {
  const SimulationParams p = params_for(static_cast<int>(state.range(0)));
  const PhaseGrid g = make_grid(p);
  const CollisionKernel k = make_kernel(p, g);
  for (auto _ : state) {
    PairTable t = build_pair_table(g, k);
    benchmark::DoNotOptimize(t.entries.data());
  }
}
BENCHMARK(BM_pair_table)->Arg(16)->Arg(32)->Unit(benchmark::kMillisecond);

static void BM_collision_rates(benchmark::State& state) {
  Bench b(params_for(static_cast<int>(state.range(0)), 1));
  for (auto _ : state) {
    CollisionRates r = collision_rates(b.f, b.g, b.k, b.t, b.p.alpha);
    benchmark::DoNotOptimize(r.loss.a.data());
  }
}
BENCHMARK(BM_collision_rates)->Arg(8)->Arg(16)->Arg(24)->Arg(32)->Unit(benchmark::kMillisecond);

static void BM_collision_rates_fermion(benchmark::State& state) {
  SimulationParams p = params_for(static_cast<int>(state.range(0)), 1);
  p.alpha = 1.0;
  Bench b(p);
  for (auto _ : state) {
    CollisionRates r = collision_rates(b.f, b.g, b.k, b.t, b.p.alpha);
    benchmark::DoNotOptimize(r.loss.a.data());
  }
}
BENCHMARK(BM_collision_rates_fermion)->Arg(16)->Arg(32)->Unit(benchmark::kMillisecond);

static void BM_collision_step(benchmark::State& state) {
  Bench b(params_for(static_cast<int>(state.range(0)), 1));
  for (auto _ : state) {
    CollisionStepResult r = exponential_collision_step(b.f, b.g, b.k, b.t, b.p, 0.01);
    benchmark::DoNotOptimize(r.g.a.data());
  }
}
BENCHMARK(BM_collision_step)->Arg(16)->Arg(32)->Unit(benchmark::kMillisecond);

static void BM_transport_shift(benchmark::State& state) {
  Bench b(params_for(32, 64));
  for (auto _ : state) {
    DistributionField out = transport_shift(b.f, b.g, 0.0135);
    benchmark::DoNotOptimize(out.a.data());
  }
}
BENCHMARK(BM_transport_shift)->Unit(benchmark::kMicrosecond);

static void BM_projection(benchmark::State& state) {
  Bench b(params_for(32, 4));
  DistributionField drifted = b.f;
  for (int id : b.g.ball_ids) drifted.slice(0)[id] *= 1.0 + 1e-6;
  for (auto _ : state) {
    state.PauseTiming();
    DistributionField post = drifted;
    state.ResumeTiming();
    benchmark::DoNotOptimize(conservative_projection(post, b.f, b.g, b.p.alpha));
  }
}
BENCHMARK(BM_projection)->Unit(benchmark::kMicrosecond);

static void BM_bony_functional(benchmark::State& state) {
  Bench b(params_for(static_cast<int>(state.range(0)), 1));
  for (auto _ : state)
    benchmark::DoNotOptimize(bony_functional(b.f, b.g, b.k, b.t, b.p.alpha));
}
BENCHMARK(BM_bony_functional)->Arg(16)->Arg(32)->Unit(benchmark::kMillisecond);

static void BM_solve_w(benchmark::State& state) {
  double zeta = 1e-6;
  for (auto _ : state) {
    benchmark::DoNotOptimize(solve_w(zeta, 0.37));
    zeta = zeta < 1e6 ? zeta * 1.7 : 1e-6;
  }
}
BENCHMARK(BM_solve_w);

BENCHMARK_MAIN();
