#include <benchmark/benchmark.h>

#include "irsbf/channel.hpp"
#include "irsbf/mm.hpp"
#include "irsbf/power_iteration.hpp"
#include "irsbf/sdr.hpp"
#include "irsbf/sim.hpp"

using namespace irsbf;

namespace {

struct Problem {
  SystemConfig cfg;
  ChannelSet ch;
  CompositeChannel psi;
  LiftedPhaseVector init;
};

Problem instance(int n_i) {
  Problem p;
  p.cfg.n_i = n_i;
  Rng rng = make_rng(42, 0, kStreamChannel);
  p.ch = sample_channels(rng, p.cfg.n_s, n_i, Geometry{});
  p.psi = build_composite(p.ch);
  Rng irng = make_rng(42, 0, kStreamInit);
  p.init = random_lifted(irng, n_i);
  return p;
}

void BM_MMStep(benchmark::State& state) {
  const Problem p = instance(static_cast<int>(state.range(0)));
  const MMIterate it = initial_iterate(p.init, p.psi, p.cfg);
  for (auto _ : state) benchmark::DoNotOptimize(mm_step(it, p.psi, p.cfg));
}
BENCHMARK(BM_MMStep)->Arg(16)->Arg(50)->Arg(200);

void BM_RunMM(benchmark::State& state) {
  const Problem p = instance(static_cast<int>(state.range(0)));
  MMSettings st;
  st.accelerate = state.range(1) != 0;
  for (auto _ : state) benchmark::DoNotOptimize(run_mm(p.init, p.psi, p.cfg, st));
}
BENCHMARK(BM_RunMM)->Args({50, 0})->Args({50, 1})->Unit(benchmark::kMillisecond);

void BM_PowerIteration(benchmark::State& state) {
  const Problem p = instance(static_cast<int>(state.range(0)));
  const CMat omega = p.psi.psi.adjoint() * p.psi.psi;
  for (auto _ : state) benchmark::DoNotOptimize(dominant_eigenpair(omega, 1e-10, 10000));
}
BENCHMARK(BM_PowerIteration)->Arg(50)->Arg(200);

void BM_SolveSdr(benchmark::State& state) {
  const Problem p = instance(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(solve_sdr(p.psi, p.cfg));
}
BENCHMARK(BM_SolveSdr)->Arg(16)->Arg(50)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
