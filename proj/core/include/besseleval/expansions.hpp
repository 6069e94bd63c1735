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

// Classical expansions of J and Y: power series for small arguments, Debye
// expansions for large order, and the large-argument series for the phase
// function alpha. Logarithmic variants never form J or Y explicitly, so they
// stay finite where the functions themselves under- or overflow.

#ifndef BESSELEVAL_EXPANSIONS_HPP_
#define BESSELEVAL_EXPANSIONS_HPP_

#include <vector>

namespace besseleval {

// A nonzero real number as sign * exp(log_abs).
template <typename Real>
struct SignedLog {
  Real log_abs{};
  int sign = 1;

  Real value() const;
};

// sin(pi x) and cos(pi x) with exact argument reduction.
template <typename Real>
Real sin_pi(Real x);
template <typename Real>
Real cos_pi(Real x);

// log Gamma(x) for x > 0, computed in long double.
template <typename Real>
Real log_gamma(Real x);
template <>
double log_gamma<double>(double x);
template <>
long double log_gamma<long double>(long double x);

// 1 / Gamma(x) for any real x, as a signed logarithm. Zero at the poles is
// reported with log_abs = -inf.
template <typename Real>
SignedLog<Real> log_recip_gamma(Real x);

// ---------------------------------------------------------------------------
// Power series.

// J_mu(t) for any real mu that is not a negative integer, t > 0.
template <typename Real>
SignedLog<Real> log_j_series(Real mu, Real t);

// J_nu(t); with_log selects the log-space route, which avoids underflow of
// the leading power.
template <typename Real>
Real series_j(Real nu, Real t, bool with_log);

// log J_nu(t) and its t-derivative, nu >= 0.
template <typename Real>
struct LogWithSlope {
  Real value{};
  Real slope{};
};
template <typename Real>
LogWithSlope<Real> log_j_series_slope(Real nu, Real t);

// Y_nu(t) from J_nu and J_{-nu}, formed in long double. Orders within
// kNearIntegerWidth of an integer are interpolated in nu from a 12-point
// Chebyshev stencil of half-width kStencilHalfWidth around the integer.
inline constexpr double kNearIntegerWidth = 1e-3;
inline constexpr double kStencilHalfWidth = 2e-3;

template <typename Real>
Real series_y(Real nu, Real t);

// log(-Y_nu(t)) where Y_nu(t) < 0. Throws DomainError if the sign premise
// fails.
template <typename Real>
Real series_log_neg_y(Real nu, Real t);

// ---------------------------------------------------------------------------
// Debye expansions, valid for t well below nu.

// Coefficients of the Debye polynomials u_0 .. u_n, exact rationals rounded
// to Real. u_k has degree 3k; coefficient arrays are in ascending powers.
template <typename Real>
std::vector<std::vector<Real>> debye_polys(int n);

template <typename Real>
class DebyeExpansion {
 public:
  explicit DebyeExpansion(int terms);

  int terms() const { return static_cast<int>(polys_.size()) - 1; }

  // Require 0 < t < nu.
  Real log_j(Real nu, Real t) const;
  Real log_neg_y(Real nu, Real t) const;
  LogWithSlope<Real> log_j_slope(Real nu, Real t) const;

 private:
  struct Geometry;
  Geometry geometry(Real nu, Real t) const;
  Real sum(Real p, Real inv_nu, bool alternate) const;
  Real sum_slope(Real p, Real inv_nu) const;

  std::vector<std::vector<Real>> polys_;
};

// ---------------------------------------------------------------------------
// Large-argument series for the phase function:
//   alpha'(t) ~ sum_k s_k t^(-2k),
// stored as s_k / sigma^(2k), sigma = max(nu, 1), to keep large orders in
// range.

template <typename Real>
struct AlphaAsymCoeffs {
  Real nu{};
  Real scale{};             // sigma
  std::vector<Real> r;      // scaled coefficients of pi t M(t) / 2
  std::vector<Real> s;      // scaled coefficients of alpha'
};

template <typename Real>
AlphaAsymCoeffs<Real> alpha_asym_coeffs(Real nu, int terms = 30);

template <typename Real>
Real alpha_asym(const AlphaAsymCoeffs<Real>& c, Real t);
template <typename Real>
Real alphap_asym(const AlphaAsymCoeffs<Real>& c, Real t);
template <typename Real>
Real alphapp_asym(const AlphaAsymCoeffs<Real>& c, Real t);

}  // namespace besseleval

#endif  // BESSELEVAL_EXPANSIONS_HPP_
