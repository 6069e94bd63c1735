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

// Properties of the table and the evaluator, on a table restricted to
// 2 <= nu <= 1000 so that it builds in a few seconds.

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <cstring>
#include <limits>
#include <numbers>
#include <random>
#include <sstream>

#include "besseleval/errors.hpp"
#include "besseleval/eval.hpp"
#include "besseleval/phase.hpp"
#include "besseleval/table.hpp"

namespace besseleval {
namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kJ0At1 = 0.76519768655796655145;

const BesselTable& mini_table() {
  static const BesselTable table = [] {
    BuildOptions o;
    o.x_breaks = {1e-3, 1e-2, 0.02, 0.1, 0.5};
    return build_table(o);
  }();
  return table;
}

const Evaluator& evaluator() {
  static const Evaluator ev(mini_table());
  return ev;
}

std::string bytes_of(const BesselTable& t) {
  std::ostringstream out(std::ios::binary);
  write_table(t, out);
  return out.str();
}

BesselTable from_bytes(const std::string& s) {
  std::istringstream in(s, std::ios::binary);
  return read_table(in);
}

double modulus(const EvalResult& r) { return std::hypot(r.j, r.y); }

TEST(UnifyPartitions, MergesAndSorts) {
  EXPECT_EQ(unify_partitions({{0, 0.5, 1}, {0, 0.25, 1}}),
            (std::vector<double>{0, 0.25, 0.5, 1}));
  EXPECT_EQ(unify_partitions({{0, 0.5, 1}, {0, 0.5 + 1e-14, 1}}),
            (std::vector<double>{0, 0.5, 1}));
  EXPECT_EQ(unify_partitions({{0, 1}}), (std::vector<double>{0, 1}));
}

TEST(Serialization, RoundTripIsBitExact) {
  const auto s = bytes_of(mini_table());
  const auto t = from_bytes(s);
  EXPECT_EQ(bytes_of(t), s);
  const Evaluator a(mini_table());
  const Evaluator b(t);
  for (double nu : {0.0, 0.7, 3.0, 250.0}) {
    for (double x : {0.01, 1.0, 30.0, 900.0}) {
      const auto ra = a.eval(nu, x);
      const auto rb = b.eval(nu, x);
      EXPECT_EQ(std::memcmp(&ra.j, &rb.j, sizeof(double)), 0);
      EXPECT_EQ(std::memcmp(&ra.y, &rb.y, sizeof(double)), 0);
    }
  }
}

TEST(Serialization, RejectsBadMagic) {
  auto s = bytes_of(mini_table());
  s[0] = 'X';
  EXPECT_THROW(from_bytes(s), FormatError);
}

TEST(Serialization, RejectsTruncation) {
  const auto s = bytes_of(mini_table());
  for (std::size_t n : {std::size_t{0}, std::size_t{7}, std::size_t{100}, s.size() / 2,
                        s.size() - 1}) {
    EXPECT_THROW(from_bytes(s.substr(0, n)), FormatError) << n;
  }
}

TEST(Serialization, RejectsFlippedBit) {
  auto s = bytes_of(mini_table());
  s[s.size() / 2] ^= 0x10;
  EXPECT_THROW(from_bytes(s), FormatError);
}

TEST(Table, RectanglesTileEachSection) {
  const auto& t = mini_table();
  for (const auto& sec : t.sections) {
    ASSERT_GE(sec.x_breaks.size(), 2u);
    ASSERT_GE(sec.y_breaks.size(), 2u);
    ASSERT_EQ(sec.rects.size(), sec.x_intervals() * sec.y_intervals());
    for (std::size_t k = 0; k + 1 < sec.x_breaks.size(); ++k) {
      EXPECT_LT(sec.x_breaks[k], sec.x_breaks[k + 1]);
    }
    for (std::size_t k = 0; k + 1 < sec.y_breaks.size(); ++k) {
      EXPECT_LT(sec.y_breaks[k], sec.y_breaks[k + 1]);
    }
    for (std::size_t i = 0; i < sec.x_intervals(); ++i) {
      for (std::size_t j = 0; j < sec.y_intervals(); ++j) {
        const auto& r = sec.rect(i, j).rect;
        EXPECT_EQ(r.x0, sec.x_breaks[i]);
        EXPECT_EQ(r.x1, sec.x_breaks[i + 1]);
        EXPECT_EQ(r.y0, sec.y_breaks[j]);
        EXPECT_EQ(r.y1, sec.y_breaks[j + 1]);
      }
    }
  }
  for (auto id : {SectionId::kA1, SectionId::kC1, SectionId::kB1, SectionId::kB2}) {
    const auto& sec = t.section(id);
    EXPECT_EQ(sec.x_breaks, (std::vector<double>{1e-3, 1e-2, 0.02, 0.1, 0.5}));
    EXPECT_EQ(sec.y_breaks.front(), 0.0);
    EXPECT_EQ(sec.y_breaks.back(), 1.0);
  }
}

TEST(Table, CompressionDropsCoefficients) {
  const auto& t = mini_table();
  const std::size_t full = (t.meta.order + 1) * (t.meta.order + 1);
  for (const auto& sec : t.sections) {
    EXPECT_LT(sec.coefficient_count(), full * sec.rects.size()) << section_name(sec.id);
    for (const auto& r : sec.rects) {
      std::size_t n = 0;
      for (auto len : r.row_lengths) {
        EXPECT_LE(len, t.meta.order + 1u);
        n += len;
      }
      EXPECT_EQ(n, r.coeffs.size());
    }
  }
}

// The sections hold alpha' / nu and log J / nu, so absolute errors scale
// with nu.
TEST(Table, AgreesWithDirectSolve) {
  const auto& ev = evaluator();
  for (double nu : {3.7, 150.0, 777.0}) {
    const auto ph = compute_phase<long double>(nu);
    const double a = std::sqrt(nu * nu - 0.25);
    for (double f : {0.0, 1e-4, 0.01, 0.3, 0.99}) {
      double t = a + f * (1000 * nu - a);
      // a rounded to binary64 may fall just below the solve's interval.
      while (t < ph.a) t = std::nextafter(t, INFINITY);
      const auto r = ev.eval(nu, t);
      ASSERT_EQ(r.branch, 1);
      const double ap = static_cast<double>(ph.alphap(t));
      const double al = static_cast<double>(ph.alpha(t));
      EXPECT_NEAR(*r.alphap, ap, 2e-15 * ap + 1e-18 * nu) << nu << " " << t;
      EXPECT_NEAR(*r.alpha, al, 2e-15 * std::max(1.0, std::abs(al))) << nu << " " << t;
    }
    for (double f : {0.001, 0.2, 0.7, 0.999}) {
      const double t = nu / 1000 + f * (a - nu / 1000);
      const auto r = ev.eval(nu, t);
      ASSERT_EQ(r.branch, 2);
      const double half_log_t = 0.5 * std::log(t);
      const double lj =
          static_cast<double>(ph.log_j->value.eval(t)) + nu - half_log_t;
      const double ly =
          static_cast<double>(ph.log_neg_y->value.eval(t)) - nu - half_log_t;
      EXPECT_NEAR(*r.log_j, lj, 2e-15 * (nu + std::abs(lj))) << nu << " " << t;
      EXPECT_NEAR(*r.log_neg_y, ly, 2e-15 * (nu + std::abs(ly))) << nu << " " << t;
    }
  }
}

TEST(Eval, HalfOrderClosedForm) {
  const auto r = evaluator().eval(0.5, 10);
  EXPECT_EQ(r.branch, 4);
  const double s = std::sqrt(2 / (kPi * 10));
  EXPECT_NEAR(r.j, s * std::sin(10.0), 1e-15);
  EXPECT_NEAR(r.y, -s * std::cos(10.0), 1e-15);
}

TEST(Eval, OrderZeroAtOne) {
  const auto r = evaluator().eval(0, 1);
  EXPECT_NEAR(r.j, kJ0At1, 2e-16);
}

TEST(Eval, UnderflowGivesZeroAndMinusInfinity) {
  const auto r = evaluator().eval(1000, 1e-3);
  EXPECT_EQ(r.branch, 3);
  EXPECT_EQ(r.j, 0.0);
  EXPECT_EQ(r.y, -std::numeric_limits<double>::infinity());
  ASSERT_TRUE(r.log_j.has_value());
  EXPECT_LT(*r.log_j, -700);
}

// Branch 2 stores log J / nu, so its values carry a relative error of about
// eps nu; at t = 1000 nu a step of one ulp in t moves J by about eps t, so
// there the phase is compared instead.
TEST(Eval, BranchesMeetContinuously) {
  const auto& ev = evaluator();
  auto check = [&](double nu, double t, int lo_branch, int hi_branch, double tol) {
    const auto rl = ev.eval(nu, std::nextafter(t, 0.0));
    const auto rh = ev.eval(nu, std::nextafter(t, INFINITY));
    EXPECT_EQ(rl.branch, lo_branch) << nu << " " << t;
    EXPECT_EQ(rh.branch, hi_branch) << nu << " " << t;
    const double m = std::max(modulus(rl), modulus(rh));
    EXPECT_NEAR(rl.j, rh.j, tol * m) << nu << " " << t;
    EXPECT_NEAR(rl.y, rh.y, tol * m) << nu << " " << t;
  };
  auto check_phase = [&](double nu, double t, int lo_branch) {
    const auto rl = ev.eval(nu, t);
    const auto rh = ev.eval(nu, std::nextafter(t, INFINITY));
    EXPECT_EQ(rl.branch, lo_branch) << nu << " " << t;
    EXPECT_EQ(rh.branch, 7) << nu << " " << t;
    EXPECT_NEAR(*rl.alpha, *rh.alpha, 4e-16 * *rh.alpha) << nu << " " << t;
    EXPECT_NEAR(*rl.alphap, *rh.alphap, 4e-16 * *rh.alphap) << nu << " " << t;
  };
  for (double nu : {2.0, 5.0, 100.0}) {
    const double a = std::sqrt(nu * nu - 0.25);
    const double tol = 1e-14 + 1e-15 * nu;
    check(nu, nu / 1000, 3, 2, tol);
    check(nu, a, 2, 1, tol);
    check_phase(nu, 1000 * nu, 1);
  }
  check(0.3, 2, 5, 4, 1e-14);
  check_phase(0.3, 1000, 4);
  check(1.5, std::sqrt(1.5 * 1.5 - 0.25), 6, 5, 1e-14);
}

TEST(Eval, PhaseReproducesModulus) {
  const auto& ev = evaluator();
  std::mt19937_64 rng(42);
  std::uniform_real_distribution<double> u(0, 1);
  for (int k = 0; k < 1000; ++k) {
    const double nu = std::exp(u(rng) * std::log(1000.0));
    const double t = std::sqrt(nu * nu - 0.25) + u(rng) * 1200 * nu;
    const auto r = ev.eval(nu, t);
    ASSERT_TRUE(r.alphap.has_value()) << nu << " " << t;
    const double m2 = r.j * r.j + r.y * r.y;
    const double want = 2 / (kPi * t * *r.alphap);
    EXPECT_NEAR(m2, want, 1e-14 * want) << nu << " " << t;
  }
}

TEST(Eval, SmallOrderPhaseIncreases) {
  const auto& ev = evaluator();
  double prev = -INFINITY;
  for (double t = 0.5; t < 1e5; t *= 1.01) {
    const auto r = ev.eval(0.3, t);
    ASSERT_TRUE(r.alpha.has_value()) << t;
    EXPECT_GT(*r.alpha, prev) << t;
    // The phase is the continuous branch of atan2(Y, J).
    EXPECT_NEAR(std::remainder(*r.alpha - std::atan2(r.y, r.j), 2 * kPi), 0.0,
                1e-13 * std::max(1.0, *r.alpha))
        << t;
    prev = *r.alpha;
  }
}

// J_{n-1} + J_{n+1} = (2n / t) J_n, and the same for Y. The phase is about t
// with an absolute error of about eps t, which bounds the accuracy of J.
TEST(Eval, ThreeTermRecurrence) {
  const auto& ev = evaluator();
  for (double n : {10.0, 100.0, 999.0}) {
    for (double f : {1.2, 3.0, 50.0}) {
      const double t = f * n;
      const auto lo = ev.eval(n - 1, t);
      const auto mid = ev.eval(n, t);
      const auto hi = ev.eval(n + 1, t);
      const double scale =
          (1e-14 + 4e-16 * t) * std::max({modulus(lo), modulus(mid), modulus(hi)});
      EXPECT_NEAR(lo.j + hi.j, 2 * n / t * mid.j, scale) << n << " " << t;
      EXPECT_NEAR(lo.y + hi.y, 2 * n / t * mid.y, scale) << n << " " << t;
    }
  }
}

TEST(Eval, RejectsOutOfDomain) {
  const auto& ev = evaluator();
  EXPECT_THROW(ev.eval(-0.1, 1), DomainError);
  EXPECT_THROW(ev.eval(2000, 1), DomainError);
  EXPECT_THROW(ev.eval(1, 0), DomainError);
  EXPECT_THROW(ev.eval(1, -1), DomainError);
  EXPECT_THROW(ev.eval(std::nan(""), 1), DomainError);
  EXPECT_THROW(ev.eval(1, INFINITY), DomainError);
}

TEST(Eval, CopiesGiveIdenticalResults) {
  const Evaluator first(mini_table());
  Evaluator second = first;
  const Evaluator third(std::move(second));
  for (double nu : {0.2, 1.9, 2.0, 64.0, 999.0}) {
    for (double t : {1e-3, 0.7, 5.0, 2e3, 5e6}) {
      const auto a = first.eval(nu, t);
      const auto b = third.eval(nu, t);
      EXPECT_EQ(std::memcmp(&a.j, &b.j, sizeof(double)), 0) << nu << " " << t;
      EXPECT_EQ(std::memcmp(&a.y, &b.y, sizeof(double)), 0) << nu << " " << t;
      EXPECT_EQ(a.branch, b.branch);
    }
  }
}

}  // namespace
}  // namespace besseleval
