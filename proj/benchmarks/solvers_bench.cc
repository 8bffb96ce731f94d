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

#include "searchcontest/distribution.h"
#include "searchcontest/equilibrium.h"
#include "searchcontest/finite_horizon.h"
#include "searchcontest/hierarchy.h"
#include "searchcontest/planner.h"

namespace searchcontest {
namespace {

void BM_SolveSymmetric(benchmark::State& state) {
  const auto d = make_exponential(1);
  for (auto _ : state) {
    benchmark::DoNotOptimize(solve_symmetric({5, 0.05, 1.0}, d));
  }
}
BENCHMARK(BM_SolveSymmetric);

void BM_SolveAsymmetric(benchmark::State& state) {
  const auto d = make_uniform(0, 1);
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(solve_asymmetric({n, 0.05, 1.0}, d));
  }
}
BENCHMARK(BM_SolveAsymmetric)->Arg(3)->Arg(5)->Unit(benchmark::kMillisecond);

void BM_SolveTwoDraw(benchmark::State& state) {
  for (auto _ : state) {
    benchmark::DoNotOptimize(solve_two_draw(static_cast<int>(state.range(0)), 0.05));
  }
}
BENCHMARK(BM_SolveTwoDraw)->Arg(2)->Arg(9)->Unit(benchmark::kMicrosecond);

void BM_SolveKDraw(benchmark::State& state) {
  const int k = static_cast<int>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(solve_k_draw({6, 0.05, k}));
  }
}
BENCHMARK(BM_SolveKDraw)->Arg(2)->Arg(3)->Arg(4)->Unit(benchmark::kMillisecond);

void BM_ThresholdProfile(benchmark::State& state) {
  for (auto _ : state) {
    benchmark::DoNotOptimize(threshold_profile(3, 0.1, 2, 9));
  }
}
BENCHMARK(BM_ThresholdProfile)->Unit(benchmark::kMillisecond);

void BM_DesignerFoc(benchmark::State& state) {
  const auto d = make_uniform(0, 1);
  for (auto _ : state) {
    benchmark::DoNotOptimize(verify_designer_foc({3, 2, 0.02, 1.0}, d));
  }
}
BENCHMARK(BM_DesignerFoc)->Unit(benchmark::kMicrosecond);

void BM_SolvePlanner(benchmark::State& state) {
  const auto d = make_pareto(2, 1);
  for (auto _ : state) {
    benchmark::DoNotOptimize(solve_planner(3, 0.05, d));
  }
}
BENCHMARK(BM_SolvePlanner)->Unit(benchmark::kMillisecond);

}  // namespace
}  // namespace searchcontest
