// Copyright 2026 The searchcontest Authors
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

#include <benchmark/benchmark.h>

#include "searchcontest/monte_carlo.h"

namespace searchcontest {
namespace {

void BM_Philox(benchmark::State& state) {
  std::uint32_t i = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(random_bits(1, i++, 0, 0, kDrawStream));
  }
}
BENCHMARK(BM_Philox);

void BM_SimulateSymmetric(benchmark::State& state) {
  const auto d = make_uniform(0, 1);
  const ContestParams p{4, 0.05, 1.0};
  const auto eq = solve_symmetric(p, d);
  SimulationConfig cfg;
  cfg.replications = state.range(0);
  cfg.seed = 1;
  cfg.threads = 1;
  const StrategyProfile profile(4, Strategy::threshold(eq.threshold));
  for (auto _ : state) {
    benchmark::DoNotOptimize(simulate_contest(profile, p, d, cfg));
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_SimulateSymmetric)->Arg(10000)->Arg(100000)->Unit(benchmark::kMillisecond);

void BM_DeviationScan(benchmark::State& state) {
  const auto d = make_uniform(0, 1);
  const auto eq = solve_symmetric({2, 0.1, 1.0}, d);
  const ContestSpec spec{0.1, PrizeSchedule::winner_take_all(2, 1.0), false};
  SimulationConfig cfg;
  cfg.replications = 20000;
  cfg.seed = 1;
  cfg.threads = 1;
  const auto grid = threshold_quantile_grid(d, 19);
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        deviation_scan(StrategyProfile(2, Strategy::threshold(eq.threshold)), 0, grid, spec, d, cfg));
  }
}
BENCHMARK(BM_DeviationScan)->Unit(benchmark::kMillisecond);

}  // namespace
}  // namespace searchcontest
