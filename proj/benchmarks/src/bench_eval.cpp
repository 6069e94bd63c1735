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

// Evaluation latency per branch. Loads $BESSELEVAL_TABLE, or builds the
// table once (about 15 s on one core) when the variable is unset.

#include <benchmark/benchmark.h>

#include <cmath>
#include <cstdlib>
#include <memory>
#include <random>
#include <vector>

#include "besseleval/eval.hpp"

namespace {

using besseleval::Evaluator;

const Evaluator& evaluator() {
  static const std::unique_ptr<Evaluator> ev = [] {
    if (const char* path = std::getenv("BESSELEVAL_TABLE"); path && *path) {
      return std::make_unique<Evaluator>(Evaluator::from_file(path));
    }
    return std::make_unique<Evaluator>(besseleval::build_table({}));
  }();
  return *ev;
}

struct Point {
  double nu;
  double t;
};

// 4096 points with nu log-uniform in [lo, hi] and t = nu * s (or s for
// nu < 2) with s uniform in [s_lo, s_hi].
std::vector<Point> points(double lo, double hi, double s_lo, double s_hi) {
  std::mt19937_64 rng(42);
  std::uniform_real_distribution<double> u(0, 1);
  std::vector<Point> out(4096);
  for (auto& p : out) {
    p.nu = lo == hi ? lo : lo * std::pow(hi / lo, u(rng));
    const double s = s_lo + (s_hi - s_lo) * u(rng);
    p.t = p.nu < 2 ? s : p.nu * s;
  }
  return out;
}

void run(benchmark::State& state, const std::vector<Point>& pts) {
  const Evaluator& ev = evaluator();
  std::size_t k = 0;
  for (auto _ : state) {
    const Point& p = pts[k++ & 4095];
    benchmark::DoNotOptimize(ev.eval(p.nu, p.t));
  }
  state.SetItemsProcessed(state.iterations());
}

void BM_Oscillatory(benchmark::State& state) {
  static const auto pts = points(2, 1e9, 1.01, 999);
  run(state, pts);
}
BENCHMARK(BM_Oscillatory);

void BM_Nonoscillatory(benchmark::State& state) {
  static const auto pts = points(2, 1e9, 0.002, 0.99);
  run(state, pts);
}
BENCHMARK(BM_Nonoscillatory);

void BM_DeepDebye(benchmark::State& state) {
  static const auto pts = points(10, 1e9, 1e-5, 9e-4);
  run(state, pts);
}
BENCHMARK(BM_DeepDebye);

void BM_SmallOrderTable(benchmark::State& state) {
  static const auto pts = points(1e-3, 1.99, 2, 1000);
  run(state, pts);
}
BENCHMARK(BM_SmallOrderTable);

void BM_SmallOrderSeries(benchmark::State& state) {
  static const auto pts = points(1e-3, 1.99, 0.01, 1.99);
  run(state, pts);
}
BENCHMARK(BM_SmallOrderSeries);

void BM_LargeArgument(benchmark::State& state) {
  static const auto pts = points(2, 1e6, 1001, 1e5);
  run(state, pts);
}
BENCHMARK(BM_LargeArgument);

}  // namespace
