// Copyright 2026 The advgame Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Serial reference vs parallel kernel timings.

#include <random>

#include <benchmark/benchmark.h>

#include "advgame/bimatrix_solver.h"
#include "advgame/cli/region_map.h"
#include "advgame/mc_simulator.h"

namespace advgame {
namespace {

GameSpec BenchSpec(std::int64_t n) {
  EconomicParams econ;
  econ.n = n;
  econ.r_max = 0.5;
  econ.r_minus_adv = 0.5;
  RobustnessMatrix rob(2, 1);
  rob << 0.3, 0.7;
  return GameSpec::Make({{"standard", 0.95, 0.0}, {"hardened", 0.85, 0.0}},
                        {AttackAction::Real("attack", 0.0)}, rob, econ);
}

template <bool kParallel>
void BM_Simulate(benchmark::State& state) {
  const GameSpec spec = BenchSpec(state.range(0));
  const Strategy s = Strategy::Uniform(2);
  const Strategy r = Strategy::Uniform(2);
  const SimConfig cfg = SimConfig::FromSpec(spec, 7, 256);
  for (auto _ : state) {
    SimResult res = kParallel ? Simulate(spec, s, r, cfg)
                              : reference::Simulate(spec, s, r, cfg);
    benchmark::DoNotOptimize(res.mean_utility_adv);
  }
}
BENCHMARK(BM_Simulate<false>)->Arg(1000)->Arg(10000);
BENCHMARK(BM_Simulate<true>)->Arg(1000)->Arg(10000);

PayoffMatrices RandomGame(int size) {
  std::mt19937_64 gen(static_cast<std::uint64_t>(size));
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  PayoffMatrices m;
  m.u_def.resize(size, size);
  m.u_adv.resize(size, size);
  for (int i = 0; i < size; ++i) {
    for (int j = 0; j < size; ++j) {
      m.u_def(i, j) = dist(gen);
      m.u_adv(i, j) = dist(gen);
    }
  }
  return m;
}

template <bool kParallel>
void BM_SupportEnumeration(benchmark::State& state) {
  const PayoffMatrices m = RandomGame(static_cast<int>(state.range(0)));
  for (auto _ : state) {
    auto eq = kParallel ? SupportEnumeration(m)
                        : reference::SupportEnumeration(m);
    benchmark::DoNotOptimize(eq.size());
  }
}
BENCHMARK(BM_SupportEnumeration<false>)->Arg(6)->Arg(8);
BENCHMARK(BM_SupportEnumeration<true>)->Arg(6)->Arg(8);

template <bool kParallel>
void BM_Rasterize(benchmark::State& state) {
  cli::MapParams params;
  params.kind = cli::MapKind::kDefender;
  params.r_max = 0.6;
  const int grid = static_cast<int>(state.range(0));
  for (auto _ : state) {
    cli::RegionMap map = kParallel ? cli::Rasterize(params, grid)
                                   : cli::reference::Rasterize(params, grid);
    benchmark::DoNotOptimize(map.cells.size());
  }
}
BENCHMARK(BM_Rasterize<false>)->Arg(101)->Arg(401);
BENCHMARK(BM_Rasterize<true>)->Arg(101)->Arg(401);

}  // namespace
}  // namespace advgame

BENCHMARK_MAIN();
