// Copyright 2026 The besseleval Authors
//
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

// Cost of one phase solve. It should barely depend on the order.

#include <benchmark/benchmark.h>

#include "besseleval/phase.hpp"

namespace {

void BM_PhaseSolve(benchmark::State& state) {
  const double nu = static_cast<double>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(besseleval::compute_phase<double>(nu));
  }
}
BENCHMARK(BM_PhaseSolve)->Arg(1000)->Arg(100000000)->Unit(benchmark::kMillisecond);

void BM_PhaseSolveLongDouble(benchmark::State& state) {
  const long double nu = static_cast<long double>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(besseleval::compute_phase<long double>(nu));
  }
}
BENCHMARK(BM_PhaseSolveLongDouble)
    ->Arg(1000)
    ->Arg(100000000)
    ->Unit(benchmark::kMillisecond);

}  // namespace
