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

// Accuracy experiments against the high-precision reference, shared by the
// command-line `verify` verb and the acceptance checks.
//
//   phase   nu uniform in the range, t uniform in (a, 1000 nu), or (0, 1000)
//           for nu < 1/2; error in alpha'
//   logs    t uniform in (0, a); error in -nu + log J and nu + log(-Y)
//   deep    t uniform in (nu/1000, nu/10); same errors as logs
//   hankel  integer nu, t uniform in (0, 1000 max(nu, 1)); error in
//           H = J + iY

#ifndef BESSELEVAL_PROTOCOLS_PROTOCOLS_HPP_
#define BESSELEVAL_PROTOCOLS_PROTOCOLS_HPP_

#include <algorithm>
#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "besseleval/eval.hpp"

namespace besseleval::protocols {

enum class Protocol { kPhase, kLogs, kDeep, kHankel };

std::string protocol_name(Protocol p);
std::optional<Protocol> parse_protocol(const std::string& name);

// std::mt19937_64 with a fixed mapping to [0, 1). The standard
// distributions are implementation-defined, this is not, so a seed gives
// the same points on every platform.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

 private:
  std::mt19937_64 engine_;
};

struct Sample {
  double nu;
  double t;
};

// Points for one experiment with nu in [nu_lo, nu_hi]. For kHankel the order
// is fixed at nu_lo, which must be an integer.
std::vector<Sample> draw(Protocol p, double nu_lo, double nu_hi,
                         std::size_t count, std::uint64_t seed);

struct PointError {
  double nu = 0;
  double t = 0;
  int branch = 0;
  // For logs and deep: error of -nu + log J in first, nu + log(-Y) in
  // second. Otherwise only first is used.
  double first = 0;
  double second = 0;
};

struct Report {
  Protocol protocol = Protocol::kPhase;
  double nu_lo = 0;
  double nu_hi = 0;
  std::size_t samples = 0;
  // Points the reference declined; not counted in the maxima.
  std::size_t skipped = 0;
  double max_first = 0;
  double max_second = 0;
  PointError worst_first;
  PointError worst_second;

  double max_error() const { return std::max(max_first, max_second); }
};

// Evaluates every sample and compares with the reference. threads = 0 uses
// the hardware concurrency. Deterministic for a given sample list.
Report run(const Evaluator& evaluator, Protocol p,
           const std::vector<Sample>& samples, double nu_lo, double nu_hi,
           unsigned threads = 0);

// One experiment per decade [10^k, 10^(k+1)] covering [nu_lo, nu_hi]; the
// end points are clipped to the range.
std::vector<std::pair<double, double>> decades(double nu_lo, double nu_hi);

// Pass threshold for one experiment. phase: 5e-15 up to nu = 1e5, 5e-14
// above. logs and deep: 2e-14. hankel: a per-order value for the
// orders 0, 1, 10, ..., 1e9, and 1e-14 max(nu, 1) for any other order.
double default_tolerance(Protocol p, double nu_lo, double nu_hi);

}  // namespace besseleval::protocols

#endif  // BESSELEVAL_PROTOCOLS_PROTOCOLS_HPP_
