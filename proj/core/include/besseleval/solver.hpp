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

// Adaptive spectral collocation solver for y'' = f(t, y, y').
//
// The interval is processed left to right from a stack. On each candidate
// piece a trapezoid rule predicts y'', then Newton's method on the
// collocation system refines it; y' and y are always recovered from y'' by
// spectral integration. A piece is accepted when the upper half of the
// Chebyshev coefficients of y is negligible, otherwise it is bisected.
// Terminal value problems are solved by reflecting t -> a + b - t.

#ifndef BESSELEVAL_SOLVER_HPP_
#define BESSELEVAL_SOLVER_HPP_

#include <functional>
#include <vector>

#include "besseleval/cheb.hpp"

namespace besseleval {

enum class BoundaryKind { kInitial, kTerminal };

template <typename Real>
struct OdeProblem {
  using Fn = std::function<Real(Real t, Real y, Real yp)>;
  Fn rhs;      // f
  Fn rhs_dy;   // df/dy
  Fn rhs_dyp;  // df/dy'
  Real a{};
  Real b{};
  BoundaryKind kind = BoundaryKind::kInitial;
  Real y_bc{};   // y at a (initial) or at b (terminal)
  Real yp_bc{};  // y' likewise
};

// About 450 ulps. Much tighter and rounding noise in the collocation
// derivative keeps exciting the oscillatory mode of Kummer's equation near
// the turning point, so piece counts grow with nu.
template <typename Real>
Real default_solver_tolerance();
template <>
double default_solver_tolerance<double>();
template <>
long double default_solver_tolerance<long double>();

template <typename Real>
struct SolverOptions {
  int order = 30;
  Real tolerance = default_solver_tolerance<Real>();
  int max_stack = 300;
  int max_newton = 50;
};

template <typename Real>
struct OdeSolution {
  PiecewiseChebFn<Real> y;
  PiecewiseChebFn<Real> yp;
  PiecewiseChebFn<Real> ypp;
  int pieces_tried = 0;  // accepted plus rejected candidates
};

// Throws SolverError when the stack overflows, an interval can no longer be
// bisected, or the problem is malformed.
template <typename Real>
OdeSolution<Real> solve(const OdeProblem<Real>& problem,
                        const SolverOptions<Real>& options = {});

// One collocation refinement on [eta1, eta2] with y(eta1) = c1,
// y'(eta1) = c2, starting from the given y'' node values. Exposed for tests.
template <typename Real>
struct NewtonResult {
  std::vector<Real> y, yp, ypp;
  std::vector<Real> update_norms;  // max |delta| of every computed update
  int applied = 0;                 // updates kept
};

template <typename Real>
NewtonResult<Real> newton_refine(const OdeProblem<Real>& problem, Real eta1,
                                 Real eta2, Real c1, Real c2,
                                 std::vector<Real> ypp, int max_newton);

// Implicit trapezoid sweep over the Chebyshev nodes of [eta1, eta2],
// returning y'' at the nodes.
template <typename Real>
std::vector<Real> trapezoid_predict(const OdeProblem<Real>& problem, Real eta1,
                                    Real eta2, Real c1, Real c2, int order);

}  // namespace besseleval

#endif  // BESSELEVAL_SOLVER_HPP_
