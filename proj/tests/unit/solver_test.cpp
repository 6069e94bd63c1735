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

#include <cmath>
#include <numbers>
#include <vector>

#include "besseleval/errors.hpp"
#include "besseleval/solver.hpp"
#include "oracle_values.hpp"

namespace besseleval {
namespace {

constexpr double kPi = std::numbers::pi;

OdeProblem<double> flat() {
  OdeProblem<double> p;
  p.rhs = [](double, double, double) { return 0.0; };
  p.rhs_dy = [](double, double, double) { return 0.0; };
  p.rhs_dyp = [](double, double, double) { return 0.0; };
  p.a = 0;
  p.b = 1;
  p.y_bc = 1;
  p.yp_bc = 0;
  return p;
}

OdeProblem<double> harmonic(double a, double b, BoundaryKind kind, double y, double yp) {
  OdeProblem<double> p;
  p.rhs = [](double, double u, double) { return -u; };
  p.rhs_dy = [](double, double, double) { return -1.0; };
  p.rhs_dyp = [](double, double, double) { return 0.0; };
  p.a = a;
  p.b = b;
  p.kind = kind;
  p.y_bc = y;
  p.yp_bc = yp;
  return p;
}

// r'' + (r')^2 + 1 = 0, r = log cos t.
OdeProblem<double> riccati() {
  OdeProblem<double> p;
  p.rhs = [](double, double, double rp) { return -rp * rp - 1; };
  p.rhs_dy = [](double, double, double) { return 0.0; };
  p.rhs_dyp = [](double, double, double rp) { return -2 * rp; };
  p.a = 0;
  p.b = 1;
  p.y_bc = 0;
  p.yp_bc = 0;
  return p;
}

double max_abs(std::span<const double> v) {
  double m = 0;
  for (double x : v) m = std::max(m, std::abs(x));
  return m;
}

// On every piece, y' minus its left value equals the spectral integral of
// y'', and likewise y from y'.
void expect_consistent(const OdeSolution<double>& s) {
  const int n = s.y.order();
  const auto& br = s.y.breakpoints();
  for (std::size_t j = 0; j < s.y.pieces(); ++j) {
    const auto grid = cheb_nodes(n, br[j], br[j + 1]);
    const auto y = s.y.piece_values(j);
    const auto yp = s.yp.piece_values(j);
    const auto ypp = s.ypp.piece_values(j);
    const double scale = 1 + max_abs(y);
    const auto iypp = spectral_integrate(UnivariateExpansion<double>{
        grid, std::vector<double>(ypp.begin(), ypp.end())});
    const auto iyp = spectral_integrate(UnivariateExpansion<double>{
        grid, std::vector<double>(yp.begin(), yp.end())});
    for (int l = 0; l <= n; ++l) {
      EXPECT_LT(std::abs(yp[l] - yp[0] - iypp.values[l]), 1e-12 * scale);
      EXPECT_LT(std::abs(y[l] - y[0] - iyp.values[l]), 1e-12 * scale);
    }
  }
}

// Tail of the coefficients of y on each piece, relative to the largest.
void expect_tail_below(const OdeSolution<double>& s, double eps) {
  const int n = s.y.order();
  for (std::size_t j = 0; j < s.y.pieces(); ++j) {
    const auto v = s.y.piece_values(j);
    const auto c = coeffs_from_values<double>(v);
    double head = 0;
    double tail = 0;
    for (int k = 0; k <= n; ++k) {
      head = std::max(head, std::abs(c[k]));
      if (k >= (n + 1) / 2 + 1) tail = std::max(tail, std::abs(c[k]));
    }
    EXPECT_LE(tail, eps * head) << "piece " << j;
  }
}

TEST(Solve, ConstantSolution) {
  const auto s = solve(flat());
  EXPECT_EQ(s.y.pieces(), 1u);
  for (double v : s.y.piece_values(0)) EXPECT_NEAR(v, 1.0, 1e-15);
}

TEST(Solve, Sine) {
  const auto s = solve(harmonic(0, kPi / 2, BoundaryKind::kInitial, 0, 1));
  EXPECT_NEAR(s.y.eval(kPi / 2), 1.0, 1e-13);
  EXPECT_LE(s.y.pieces(), 8u);
  expect_consistent(s);
  expect_tail_below(s, SolverOptions<double>{}.tolerance);
}

TEST(Solve, RiccatiLogCos) {
  const auto s = solve(riccati());
  EXPECT_NEAR(s.y.eval(1.0), oracle::kLogCos1, 1e-12);
  EXPECT_LE(s.y.pieces(), 8u);
  expect_consistent(s);
  expect_tail_below(s, SolverOptions<double>{}.tolerance);
}

TEST(Solve, BoundaryValuesReproduced) {
  const auto s = solve(harmonic(0.5, 3.0, BoundaryKind::kInitial, 0.25, -2.0));
  EXPECT_EQ(s.y.piece_values(0)[0], 0.25);
  EXPECT_EQ(s.yp.piece_values(0)[0], -2.0);
}

TEST(Solve, TerminalMatchesInitial) {
  // y = cos t + 2 sin t on [0, 4].
  auto y = [](double t) { return std::cos(t) + 2 * std::sin(t); };
  auto yp = [](double t) { return -std::sin(t) + 2 * std::cos(t); };
  const auto fwd = solve(harmonic(0, 4, BoundaryKind::kInitial, y(0), yp(0)));
  const auto bwd = solve(harmonic(0, 4, BoundaryKind::kTerminal, y(4), yp(4)));
  const auto& br = bwd.y.breakpoints();
  EXPECT_EQ(br.front(), 0.0);
  EXPECT_EQ(br.back(), 4.0);
  for (std::size_t j = 0; j + 1 < br.size(); ++j) EXPECT_LT(br[j], br[j + 1]);
  EXPECT_NEAR(bwd.y.eval(4.0), y(4), 1e-15);
  for (std::size_t j = 0; j < fwd.y.pieces(); ++j) {
    const auto grid = cheb_nodes(fwd.y.order(), fwd.y.breakpoints()[j],
                                 fwd.y.breakpoints()[j + 1]);
    for (double t : grid.nodes) {
      EXPECT_NEAR(fwd.y.eval(t), bwd.y.eval(t), 1e-12);
    }
  }
  EXPECT_LE(bwd.y.pieces(), 8u);
}

TEST(Solve, RejectsEmptyInterval) {
  auto p = flat();
  p.b = p.a;
  EXPECT_THROW(solve(p), SolverError);
}

TEST(Solve, StackOverflowIsReported) {
  // y'' = 2 y^3 with y = 1 / (1 - t), which has a pole at t = 1. The first
  // bisection leaves two pending intervals.
  OdeProblem<double> p;
  p.rhs = [](double, double y, double) { return 2 * y * y * y; };
  p.rhs_dy = [](double, double y, double) { return 6 * y * y; };
  p.rhs_dyp = [](double, double, double) { return 0.0; };
  p.a = 0;
  p.b = 1 - 1e-10;
  p.y_bc = 1;
  p.yp_bc = 1;
  SolverOptions<double> opt;
  opt.max_stack = 1;
  EXPECT_THROW(solve(p, opt), SolverError);
}

TEST(Newton, LinearProblemConvergesInOneStep) {
  const auto p = harmonic(0, 1, BoundaryKind::kInitial, 0, 1);
  std::vector<double> guess(31, 0.0);
  const auto r = newton_refine(p, 0.0, 1.0, 0.0, 1.0, guess, 50);
  ASSERT_GE(r.update_norms.size(), 2u);
  // After the first update only rounding-level corrections remain, which
  // may shrink a little further before the iteration stops.
  EXPECT_LT(r.update_norms[1], 1e-14 * r.update_norms[0]);
  EXPECT_LE(r.applied, 3);
  const auto grid = cheb_nodes(30, 0.0, 1.0);
  for (int l = 0; l <= 30; ++l) EXPECT_NEAR(r.y[l], std::sin(grid.nodes[l]), 1e-15);
}

TEST(Newton, ExactInputStopsImmediately) {
  const auto p = flat();
  std::vector<double> guess(31, 0.0);
  const auto r = newton_refine(p, 0.0, 1.0, 1.0, 0.0, guess, 50);
  ASSERT_EQ(r.update_norms.size(), 1u);
  EXPECT_EQ(r.update_norms[0], 0.0);
}

TEST(Newton, RiccatiUpdatesDecrease) {
  const auto p = riccati();
  const auto guess = trapezoid_predict(p, 0.0, 0.5, 0.0, 0.0, 30);
  const auto r = newton_refine(p, 0.0, 0.5, 0.0, 0.0, guess, 50);
  ASSERT_GE(r.applied, 2);
  for (int k = 1; k < r.applied; ++k) {
    EXPECT_LT(r.update_norms[k], r.update_norms[k - 1]);
  }
}

}  // namespace
}  // namespace besseleval
