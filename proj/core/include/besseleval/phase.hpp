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

// Nonoscillatory phase of Bessel's equation for a single order nu.
//
// With u'' + q u = 0, q(t) = 1 - (nu^2 - 1/4) / t^2, the phase alpha satisfies
//
//   sqrt(pi t / 2) J_nu(t) = cos(alpha) / sqrt(alpha'),
//   sqrt(pi t / 2) Y_nu(t) = sin(alpha) / sqrt(alpha').
//
// For nu > 1/2 the solve has three parts:
//  1. alpha' from Kummer's equation on [a, 1000 nu], a = sqrt(nu^2 - 1/4),
//     with data at the right end from the large-argument series. The solve
//     starts where that series has converged, which keeps the cost
//     independent of nu;
//  2. nu + log(-Y sqrt t) from a Riccati equation on [nu / 1000, a], started
//     at a from the phase;
//  3. -nu + log(J sqrt t) from the same Riccati equation started at nu / 1000
//     from the power series (nu < 10) or the Debye expansion.

#ifndef BESSELEVAL_PHASE_HPP_
#define BESSELEVAL_PHASE_HPP_

#include <optional>

#include "besseleval/cheb.hpp"
#include "besseleval/expansions.hpp"
#include "besseleval/solver.hpp"

namespace besseleval {

template <typename Real>
struct PhaseOptions {
  SolverOptions<Real> solver{};
  int asym_terms = 30;
  int debye_terms = 18;
  // Orders at or above this use Debye data to start the J solve.
  Real debye_threshold = 10;
};

template <typename Real>
struct LogSolution {
  PiecewiseChebFn<Real> value;  // the shifted logarithm
  PiecewiseChebFn<Real> slope;  // its t-derivative
};

template <typename Real>
struct PhaseSolution {
  Real nu{};
  Real a{};  // oscillatory interval [a, b]
  Real b{};
  // The large-argument series is exact to working precision on
  // [b_series, b], so the ODE is only solved on [a, b_series].
  Real b_series{};
  // The pieces below are in x = t - origin with origin = a.
  Real origin{};
  AlphaAsymCoeffs<Real> series;
  PiecewiseChebFn<Real> alpha_pieces;
  PiecewiseChebFn<Real> alphap_pieces;
  PiecewiseChebFn<Real> alphapp_pieces;
  // Present for nu > 1/2 on [nu / 1000, a].
  std::optional<LogSolution<Real>> log_neg_y;  // nu + log(-Y sqrt t)
  std::optional<LogSolution<Real>> log_j;      // -nu + log(J sqrt t)
  int pieces_tried = 0;

  // Throw DomainError outside [a, b].
  Real alpha(Real t) const;
  Real alphap(Real t) const;
  Real alphapp(Real t) const;
  // The same at t = origin + x, without rounding x + origin.
  Real alpha_shifted(Real x) const;
  Real alphap_shifted(Real x) const;
  Real alphapp_shifted(Real x) const;
};

// Smallest t at which the truncated large-argument series for alpha' is
// accurate to relative precision tol.
template <typename Real>
Real series_cutoff(const AlphaAsymCoeffs<Real>& coeffs, Real tol);

// Full pipeline for nu > 1/2; for 0 <= nu <= 1/2 only the phase on
// [2, 1000] is produced.
template <typename Real>
PhaseSolution<Real> compute_phase(Real nu, const PhaseOptions<Real>& options = {});

// Phase only, on an explicit interval [a, b] where q > 0 throughout.
template <typename Real>
PhaseSolution<Real> compute_phase_on(Real nu, Real a, Real b,
                                     const PhaseOptions<Real>& options = {});

// Smallest t > a with alpha(t) = pi / 2, i.e. the first zero of J_nu.
template <typename Real>
Real find_t_star(const PhaseSolution<Real>& phase);

// J and Y reconstructed from the solution. Throws DomainError outside the
// covered range.
template <typename Real>
Real phase_j(const PhaseSolution<Real>& phase, Real t);
template <typename Real>
Real phase_y(const PhaseSolution<Real>& phase, Real t);

}  // namespace besseleval

#endif  // BESSELEVAL_PHASE_HPP_
