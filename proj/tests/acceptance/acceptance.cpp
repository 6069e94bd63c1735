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

// Acceptance checks. Prints one PASS or FAIL line per criterion, with the
// measured numbers underneath, and exits nonzero if any criterion fails.
//
//   acceptance [unit-test-binary property-test-binary]
//
// Criterion 7 runs the two test binaries when they are given.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <sstream>
#include <string>
#include <vector>

#include "besseleval/eval.hpp"
#include "besseleval/protocols/protocols.hpp"
#include "besseleval/table.hpp"

namespace {

namespace pr = besseleval::protocols;
using besseleval::Evaluator;

constexpr std::uint64_t kSeed = 20260115;

struct Outcome {
  bool pass = true;
  std::vector<std::string> detail;
};

std::string fmt(const char* f, double a, double b = 0, double c = 0) {
  char buf[160];
  std::snprintf(buf, sizeof buf, f, a, b, c);
  return buf;
}

void report(int number, const std::string& title, const Outcome& o) {
  std::printf("criterion %d  %s  %s\n", number, o.pass ? "PASS" : "FAIL", title.c_str());
  for (const auto& line : o.detail) std::printf("    %s\n", line.c_str());
  std::fflush(stdout);
}

// One row per decade of [nu_lo, nu_hi]; tol(lo, hi) gives the threshold.
template <typename Tol>
Outcome decades(const Evaluator& ev, pr::Protocol p, double nu_lo, double nu_hi,
                std::size_t samples, Tol tol) {
  Outcome o;
  std::uint64_t seed = kSeed;
  for (const auto& [lo, hi] : pr::decades(nu_lo, nu_hi)) {
    const auto points = pr::draw(p, lo, hi, samples, seed += 7919);
    const auto r = pr::run(ev, p, points, lo, hi);
    const double limit = tol(lo, hi);
    const bool ok = r.max_error() <= limit && r.skipped == 0;
    o.pass = o.pass && ok;
    o.detail.push_back(fmt("nu %-8.3g - %-8.3g  max error %.2e", lo, hi, r.max_error()) +
                       fmt("  limit %.0e", limit) + (r.skipped ? "  skipped points" : "") +
                       (ok ? "" : "  <- over"));
  }
  return o;
}

Outcome phase_accuracy(const Evaluator& ev) {
  return decades(ev, pr::Protocol::kPhase, 1, 1e9, 1000,
                 [](double, double hi) { return hi <= 1e5 ? 5e-15 : 5e-14; });
}

Outcome log_accuracy(const Evaluator& ev) {
  return decades(ev, pr::Protocol::kLogs, 0.5, 1e4, 1000,
                 [](double, double) { return 2e-14; });
}

Outcome deep_accuracy(const Evaluator& ev) {
  return decades(ev, pr::Protocol::kDeep, 100, 1e9, 1000,
                 [](double, double) { return 2e-14; });
}

// Explicit limits at n = 1e2, 1e6 and 1e9; elsewhere ten times the
// published error.
Outcome hankel_accuracy(const Evaluator& ev) {
  Outcome o;
  std::uint64_t seed = kSeed;
  for (double n = 0; n <= 1e9; n = n == 0 ? 1 : n * 10) {
    const auto points = pr::draw(pr::Protocol::kHankel, n, n, 100, seed += 7919);
    const auto r = pr::run(ev, pr::Protocol::kHankel, points, n, n);
    const double limit = pr::default_tolerance(pr::Protocol::kHankel, n, n);
    const bool ok = r.max_error() <= limit && r.skipped == 0;
    o.pass = o.pass && ok;
    o.detail.push_back(fmt("n %-10.0f  max error %.2e  limit %.2e", n, r.max_error(), limit) +
                       fmt("  error / max(n, 1) %.2e", r.max_error() / std::max(n, 1.0)) +
                       (ok ? "" : "  <- over"));
  }
  return o;
}

Outcome build_artifact(besseleval::BesselTable& table) {
  Outcome o;
  besseleval::BuildStats stats;
  const auto t0 = std::chrono::steady_clock::now();
  table = besseleval::build_table({}, &stats);
  const double seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  std::ostringstream bytes(std::ios::binary);
  besseleval::write_table(table, bytes);
  const double size = static_cast<double>(bytes.str().size());
  o.pass = seconds <= 60 && size <= 4e6;
  o.detail.push_back(fmt("build %.1f s (limit 60 s), %.0f bytes (limit 4e6)", seconds, size));
  o.detail.push_back(fmt("x-direction tails: oscillatory %.1e, nonoscillatory %.1e",
                         stats.oscillatory_x_tail, stats.nonoscillatory_x_tail));
  return o;
}

Outcome latency(const Evaluator& ev) {
  Outcome o;
  constexpr std::size_t kPoints = 1 << 14;
  constexpr std::size_t kCalls = 1 << 21;
  pr::Rng rng(kSeed);
  std::vector<pr::Sample> points(kPoints);
  for (auto& p : points) {
    p.nu = rng.uniform() < 0.1 ? rng.uniform() : std::pow(10.0, rng.uniform(0, 9));
    p.t = 1000 * std::max(p.nu, 1.0) * (1 - rng.uniform());
  }
  double sink = 0;
  const auto t0 = std::chrono::steady_clock::now();
  for (std::size_t k = 0; k < kCalls; ++k) {
    const auto& p = points[k & (kPoints - 1)];
    sink += ev.eval(p.nu, p.t).j;
  }
  const double ns = std::chrono::duration<double, std::nano>(
                        std::chrono::steady_clock::now() - t0)
                        .count() /
                    kCalls;
  o.pass = ns <= 5000 && std::isfinite(sink);
  o.detail.push_back(fmt("mean %.0f ns per call over %.0f calls (limit 5000 ns)", ns,
                         static_cast<double>(kCalls)));
  return o;
}

Outcome property_suite(int argc, char** argv) {
  Outcome o;
  if (argc < 3) {
    o.pass = false;
    o.detail.push_back("test binaries not given");
    return o;
  }
  for (int k = 1; k <= 2; ++k) {
    const std::string cmd = std::string(argv[k]) + " --gtest_brief=1 > /dev/null 2>&1";
    const bool ok = std::system(cmd.c_str()) == 0;
    o.pass = o.pass && ok;
    o.detail.push_back(std::string(argv[k]) + (ok ? ": all passed" : ": failures"));
  }
  return o;
}

}  // namespace

int main(int argc, char** argv) {
  besseleval::BesselTable table;
  const auto built = build_artifact(table);
  const Evaluator ev(std::move(table));

  std::vector<bool> results;
  auto run = [&](int number, const std::string& title, const Outcome& o) {
    report(number, title, o);
    results.push_back(o.pass);
  };
  run(1, "phase derivative accuracy per decade", phase_accuracy(ev));
  run(2, "nonoscillatory logarithms", log_accuracy(ev));
  run(3, "deep region against Debye", deep_accuracy(ev));
  run(4, "integer-order Hankel function", hankel_accuracy(ev));
  run(5, "table build time and size", built);
  run(6, "evaluation latency", latency(ev));
  run(7, "property and unit suites", property_suite(argc, argv));

  int failed = 0;
  for (bool r : results) failed += r ? 0 : 1;
  std::printf("%d of %zu criteria passed\n", static_cast<int>(results.size()) - failed,
              results.size());
  return failed == 0 ? 0 : 1;
}
