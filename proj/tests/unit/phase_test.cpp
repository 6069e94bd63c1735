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

#include <gtest/gtest.h>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <chrono>
#include <cmath>
#include <map>
#include <numbers>
#include <stdexcept>
#include <utility>

#include "besseleval/errors.hpp"
#include "besseleval/expansions.hpp"
#include "besseleval/phase.hpp"
#include "oracle_values.hpp"

namespace besseleval {
namespace {

constexpr double kPi = std::numbers::pi;

const oracle::Point& point(double nu, double t) {
  for (const auto& p : oracle::kPoints) {
    if (p.nu == nu && p.t == t) return p;
  }
  throw std::logic_error("no oracle point");
}

double oracle_j(const oracle::Point& p) { return p.sign_j * std::exp(p.log_abs_j); }
double oracle_y(const oracle::Point& p) { return p.sign_y * std::exp(p.log_abs_y); }

const PhaseSolution<double>& phase_at(double nu) {
  static std::map<double, PhaseSolution<double>> cache;
  auto it = cache.find(nu);
  if (it == cache.end()) it = cache.emplace(nu, compute_phase(nu)).first;
  return it->second;
}

TEST(Phase, IntervalEnds) {
  const auto& ph = phase_at(100.0);
  EXPECT_DOUBLE_EQ(ph.a, std::sqrt(100.0 * 100.0 - 0.25));
  EXPECT_DOUBLE_EQ(ph.b, 1e5);
  EXPECT_LE(ph.b_series, ph.b);
  EXPECT_THROW(ph.alpha(ph.a / 2), DomainError);
  EXPECT_THROW(ph.alpha(2 * ph.b), DomainError);
}

TEST(Phase, DerivativeMatchesSeriesAtRightEnd) {
  const auto& ph = phase_at(100.0);
  const auto c = alpha_asym_coeffs(100.0);
  for (double t : {ph.b_series, 0.5 * (ph.b_series + ph.b), ph.b}) {
    EXPECT_NEAR(ph.alphap(t), alphap_asym(c, t), 1e-15 * alphap_asym(c, t)) << t;
  }
}

TEST(Phase, AlphaIsIntegralOfDerivative) {
  const auto& ph = phase_at(100.0);
  const auto f = [&](double x) { return ph.alphap_shifted(x); };
  for (double t : {110.0, 150.0, 1000.0}) {
    const double q = boost::math::quadrature::gauss_kronrod<double, 61>::integrate(
        f, 0.0, t - ph.a, 15, 1e-15);
    EXPECT_NEAR(ph.alpha(t) - ph.alpha(ph.a), q, 1e-12 * std::max(1.0, q)) << t;
  }
}

// J^2 + Y^2 = 2 / (pi t alpha') and tan(alpha) = Y / J.
TEST(Phase, ModulusAndAngleMatchOracle) {
  for (double t : {15.0, 50.0, 300.0}) {
    const auto& p = point(10, t);
    const auto& ph = phase_at(10.0);
    const double j = oracle_j(p);
    const double y = oracle_y(p);
    const double ap = 2 / (kPi * t * (j * j + y * y));
    EXPECT_NEAR(ph.alphap(t), ap, 1e-14 * ap) << t;
    const double a = ph.alpha(t);
    EXPECT_NEAR(std::remainder(a - std::atan2(y, j), 2 * kPi), 0.0, 1e-13 * a) << t;
  }
}

TEST(Phase, SmallOrderDerivative) {
  const auto& ph = phase_at(0.3);
  EXPECT_NEAR(ph.alphap(10.0), oracle::kAlphap0_3At10, 1e-15);
}

TEST(Phase, FirstZero) {
  EXPECT_NEAR(find_t_star(phase_at(1.0)), oracle::kTStar1, 4e-15 * oracle::kTStar1);
  EXPECT_NEAR(find_t_star(phase_at(2.0)), oracle::kTStar2, 4e-15 * oracle::kTStar2);
  const auto& ph = phase_at(10.0);
  const double ts = find_t_star(ph);
  EXPECT_NEAR(ts, oracle::kTStar10, 4e-15 * oracle::kTStar10);
  EXPECT_GT(ts, ph.a);
}

TEST(Phase, ZeroCountFromPhase) {
  // J_5 has 4 zeros in (0, 20): 8.77, 12.34, 15.70, 18.98.
  const auto& ph = phase_at(5.0);
  const double n = std::floor((ph.alpha(20.0) - kPi / 2) / kPi) -
                   std::floor((ph.alpha(ph.a) - kPi / 2) / kPi);
  EXPECT_EQ(n, 4.0);
}

TEST(Phase, Monotone) {
  const auto& ph = phase_at(100.0);
  double prev = ph.alpha(ph.a);
  for (double t = ph.a * 1.01; t < ph.b; t *= 1.05) {
    const double cur = ph.alpha(t);
    EXPECT_GT(cur, prev) << t;
    EXPECT_GT(ph.alphap(t), 0.0) << t;
    prev = cur;
  }
}

TEST(Phase, ReconstructionMatchesOracle) {
  struct Case {
    double nu, t, tol;
  };
  for (const auto c : {Case{10, 15, 1e-14}, Case{10, 50, 1e-14}, Case{100, 150, 1e-13},
                       Case{100, 200, 1e-13}, Case{1000, 2000, 1e-12}}) {
    const auto& p = point(c.nu, c.t);
    const auto& ph = phase_at(c.nu);
    // Relative to the modulus, since J or Y may sit near a zero.
    const double m = std::hypot(oracle_j(p), oracle_y(p));
    EXPECT_NEAR(phase_j(ph, c.t), oracle_j(p), c.tol * m) << c.nu;
    EXPECT_NEAR(phase_y(ph, c.t), oracle_y(p), c.tol * m) << c.nu;
  }
}

// The double solve; the table is built in long double.
TEST(Phase, LogFunctionsBelowTurningPoint) {
  for (const auto& [nu, t] : {std::pair{10.0, 5.0}, std::pair{100.0, 50.0},
                              std::pair{100.0, 10.0}, std::pair{1000.0, 500.0}}) {
    const auto& p = point(nu, t);
    const auto& ph = phase_at(nu);
    ASSERT_TRUE(ph.log_j.has_value());
    ASSERT_TRUE(ph.log_neg_y.has_value());
    const double lj = ph.log_j->value.eval(t) + nu - 0.5 * std::log(t);
    const double ly = ph.log_neg_y->value.eval(t) - nu - 0.5 * std::log(t);
    EXPECT_NEAR(lj, p.log_abs_j, 5e-15 * std::abs(p.log_abs_j) + 1e-13) << nu << " " << t;
    EXPECT_NEAR(ly, p.log_abs_y, 5e-15 * std::abs(p.log_abs_y) + 1e-13) << nu << " " << t;
  }
}

// At t = a the two stages meet: log(-Y sqrt t) from the Riccati solve must
// agree with the phase.
TEST(Phase, StagesAgreeAtTurningPoint) {
  for (double nu : {5.0, 100.0}) {
    const auto& ph = phase_at(nu);
    const double t = ph.a;
    const double from_phase = std::log(-phase_y(ph, t) * std::sqrt(t));
    EXPECT_NEAR(ph.log_neg_y->value.eval(t) - nu, from_phase, 1e-13) << nu;
  }
}

TEST(Phase, LargeOrderAgreesWithDebye) {
  const auto& ph = phase_at(1000.0);
  const DebyeExpansion<double> debye(18);
  const double lj = ph.log_j->value.eval(1.0) + 1000.0 - 0.5 * std::log(1.0);
  EXPECT_NEAR(lj, debye.log_j(1000.0, 1.0), 1e-15 * std::abs(lj));
}

TEST(Phase, RejectsBadOrder) {
  EXPECT_THROW(compute_phase(-1.0), DomainError);
  EXPECT_THROW(compute_phase(std::nan("")), DomainError);
}

TEST(Phase, CostDoesNotGrowWithOrder) {
  using Clock = std::chrono::steady_clock;
  auto time = [](long double nu) {
    double best = 1e300;
    for (int k = 0; k < 3; ++k) {
      const auto t0 = Clock::now();
      const auto ph = compute_phase<long double>(nu);
      best = std::min(best, std::chrono::duration<double>(Clock::now() - t0).count());
      EXPECT_GT(ph.alpha_pieces.pieces(), 0u);
    }
    return best;
  };
  const double lo = time(1e3L);
  const double hi = time(1e8L);
  EXPECT_LE(hi, 3 * lo) << lo << " s at 1e3, " << hi << " s at 1e8";
}

}  // namespace
}  // namespace besseleval
