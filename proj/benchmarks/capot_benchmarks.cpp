// Copyright 2026 The capot Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#include <benchmark/benchmark.h>

#include <cstdint>
#include <vector>

#include "capot/dual.hpp"
#include "capot/feasibility.hpp"
#include "capot/instances.hpp"
#include "capot/primal.hpp"

namespace {

capot::Problem square(std::int64_t size, std::uint64_t seed = 7) {
  const auto n = static_cast<std::size_t>(size);
  return capot::generate_instance("random_feasible", n, n, seed);
}

void BM_CheckFeasibility(benchmark::State& state) {
  const capot::Problem problem = square(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(capot::check_feasibility(problem));
  }
}
BENCHMARK(BM_CheckFeasibility)->RangeMultiplier(2)->Range(4, 64);

void BM_SolvePrimal(benchmark::State& state) {
  const capot::Problem problem = square(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(capot::solve_primal(problem));
  }
}
BENCHMARK(BM_SolvePrimal)->RangeMultiplier(2)->Range(4, 64)->Unit(benchmark::kMillisecond);

void BM_EvalI(benchmark::State& state) {
  const capot::Problem problem = square(state.range(0));
  const std::size_t n = problem.m();
  std::vector<double> u(n), v(n);
  for (std::size_t i = 0; i < n; ++i) {
    u[i] = 0.1 * static_cast<double>(i % 5) - 0.2;
    v[i] = -0.05 * static_cast<double>(i % 7);
  }
  const capot::DualPotentials p(u, v, problem);
  for (auto _ : state) {
    benchmark::DoNotOptimize(capot::eval_I(p, problem));
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(n * n));
}
BENCHMARK(BM_EvalI)->RangeMultiplier(4)->Range(4, 256);

// Fixed iteration budget with a known target, so the timing is per descent
// run rather than per convergence.
void BM_MinimizeDual(benchmark::State& state) {
  const capot::Problem problem = square(state.range(0));
  capot::DualOptions options;
  options.target_value = capot::solve_primal(problem).value;
  options.max_iter = 2000;
  for (auto _ : state) {
    benchmark::DoNotOptimize(capot::minimize_dual(problem, options));
  }
}
BENCHMARK(BM_MinimizeDual)->Arg(8)->Arg(16)->Arg(32)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
