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

#include "besseleval/protocols/protocols.hpp"

#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <stdexcept>
#include <thread>

#include "besseleval/reference/reference.hpp"

namespace besseleval::protocols {
namespace {

namespace ref = besseleval::reference;
using ref::Big;

double turning_point(double nu) {
  return nu > 0.5 ? std::sqrt((nu - 0.5) * (nu + 0.5)) : 0.0;
}

// Uniform in (lo, hi), excluding lo.
double open_uniform(Rng& rng, double lo, double hi) {
  for (;;) {
    const double t = rng.uniform(lo, hi);
    if (t > lo) return t;
  }
}

double rel(const Big& approx, const Big& exact) {
  return static_cast<double>(abs(approx - exact) / abs(exact));
}

PointError measure(const Evaluator& evaluator, Protocol p, const Sample& s) {
  const EvalResult r = evaluator.eval(s.nu, s.t);
  const ref::JY x = ref::bessel_jy(s.nu, s.t);
  PointError e;
  e.nu = s.nu;
  e.t = s.t;
  e.branch = r.branch;
  const Big nu(s.nu);
  switch (p) {
    case Protocol::kPhase:
      if (!r.alphap) throw std::logic_error("phase sample outside oscillatory region");
      e.first = rel(Big(*r.alphap), x.alphap());
      break;
    case Protocol::kLogs:
    case Protocol::kDeep:
      if (!r.log_j) throw std::logic_error("log sample outside nonoscillatory region");
      e.first = rel(Big(*r.log_j) - nu, x.j.log_abs - nu);
      e.second = rel(Big(*r.log_neg_y) + nu, x.y.log_abs + nu);
      break;
    case Protocol::kHankel: {
      Big j;
      Big y;
      if (r.log_j) {
        j = exp(Big(*r.log_j));
        y = -exp(Big(*r.log_neg_y));
      } else {
        j = Big(r.j);
        y = Big(r.y);
      }
      const Big jr = x.j.value();
      const Big yr = x.y.value();
      e.first = static_cast<double>(sqrt((j - jr) * (j - jr) + (y - yr) * (y - yr)) /
                                    sqrt(jr * jr + yr * yr));
      break;
    }
  }
  return e;
}

}  // namespace

std::string protocol_name(Protocol p) {
  switch (p) {
    case Protocol::kPhase: return "phase";
    case Protocol::kLogs: return "logs";
    case Protocol::kDeep: return "deep";
    case Protocol::kHankel: return "hankel";
  }
  return "?";
}

std::optional<Protocol> parse_protocol(const std::string& name) {
  for (Protocol p : {Protocol::kPhase, Protocol::kLogs, Protocol::kDeep,
                     Protocol::kHankel}) {
    if (protocol_name(p) == name) return p;
  }
  return std::nullopt;
}

std::vector<Sample> draw(Protocol p, double nu_lo, double nu_hi,
                         std::size_t count, std::uint64_t seed) {
  if (!(nu_lo >= 0) || !(nu_lo <= nu_hi)) {
    throw std::invalid_argument("invalid order range");
  }
  if (p == Protocol::kLogs && nu_lo < 0.5) {
    throw std::invalid_argument("the nonoscillatory region needs nu >= 1/2");
  }
  if (p == Protocol::kHankel && nu_lo != std::floor(nu_lo)) {
    throw std::invalid_argument("hankel experiments use an integer order");
  }
  Rng rng(seed);
  std::vector<Sample> out;
  out.reserve(count);
  for (std::size_t k = 0; k < count; ++k) {
    Sample s{};
    switch (p) {
      case Protocol::kPhase: {
        s.nu = rng.uniform(nu_lo, nu_hi);
        const double a = turning_point(s.nu);
        s.t = s.nu < 0.5 ? open_uniform(rng, 0, 1000)
                         : open_uniform(rng, a, 1000 * s.nu);
        break;
      }
      case Protocol::kLogs:
        s.nu = std::max(rng.uniform(nu_lo, nu_hi), std::nextafter(0.5, 1.0));
        s.t = open_uniform(rng, 0, turning_point(s.nu));
        break;
      case Protocol::kDeep:
        s.nu = rng.uniform(nu_lo, nu_hi);
        s.t = open_uniform(rng, s.nu / 1000, s.nu / 10);
        break;
      case Protocol::kHankel:
        s.nu = nu_lo;
        s.t = open_uniform(rng, 0, 1000 * std::max(nu_lo, 1.0));
        break;
    }
    out.push_back(s);
  }
  return out;
}

Report run(const Evaluator& evaluator, Protocol p,
           const std::vector<Sample>& samples, double nu_lo, double nu_hi,
           unsigned threads) {
  std::vector<std::optional<PointError>> results(samples.size());
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  auto worker = [&] {
    for (;;) {
      const std::size_t k = next.fetch_add(1);
      if (k >= samples.size()) return;
      try {
        results[k] = measure(evaluator, p, samples[k]);
      } catch (const std::runtime_error&) {
        // The reference did not converge; leave the point out.
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!error) error = std::current_exception();
      }
    }
  };
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  if (threads <= 1 || samples.size() < 2) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (unsigned k = 0; k < threads; ++k) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  if (error) std::rethrow_exception(error);

  Report report;
  report.protocol = p;
  report.nu_lo = nu_lo;
  report.nu_hi = nu_hi;
  report.samples = samples.size();
  for (const auto& r : results) {
    if (!r) {
      ++report.skipped;
      continue;
    }
    if (r->first >= report.max_first) {
      report.max_first = r->first;
      report.worst_first = *r;
    }
    if (r->second >= report.max_second) {
      report.max_second = r->second;
      report.worst_second = *r;
    }
  }
  return report;
}

std::vector<std::pair<double, double>> decades(double nu_lo, double nu_hi) {
  std::vector<std::pair<double, double>> out;
  double lo = nu_lo;
  if (lo < 1) {
    out.emplace_back(lo, std::min(1.0, nu_hi));
    lo = 1;
  }
  while (lo < nu_hi) {
    const double top = std::pow(10.0, std::floor(std::log10(lo) + 1e-12) + 1);
    out.emplace_back(lo, std::min(top, nu_hi));
    lo = top;
  }
  return out;
}

double default_tolerance(Protocol p, double nu_lo, double nu_hi) {
  switch (p) {
    case Protocol::kPhase: return nu_hi <= 1e5 ? 5e-15 : 5e-14;
    case Protocol::kLogs:
    case Protocol::kDeep: return 2e-14;
    case Protocol::kHankel: break;
  }
  struct Row {
    double n;
    double tol;
  };
  static constexpr Row kRows[] = {
      {0, 7.31e-13}, {1, 6.05e-12}, {10, 4.10e-11}, {1e2, 1e-12},
      {1e3, 4.51e-9}, {1e4, 4.63e-8}, {1e5, 4.32e-7}, {1e6, 1e-8},
      {1e7, 4.06e-5}, {1e8, 2.86e-4}, {1e9, 1e-3}};
  for (const Row& r : kRows) {
    if (r.n == nu_lo) return r.tol;
  }
  // Other orders: linear growth from 1e-12 at 100.
  return 1e-14 * std::max(nu_lo, 1.0);
}

}  // namespace besseleval::protocols
