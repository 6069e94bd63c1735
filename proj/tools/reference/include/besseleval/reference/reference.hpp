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

// High-precision reference values of J_nu(t) and Y_nu(t), for testing.
//
// Everything here runs in 80-digit MPFR arithmetic and shares no code with
// the library proper. Values are carried as (log|f|, sign) so that orders
// up to 1e9 at small t stay representable. Each regime accepts a result
// only if its truncation estimate is below kAcceptTerm; results are good to
// roughly 30 digits.
//
// Regimes:
//   series      t <= 40 or t^2 <= nu
//   hankel      nu < 2, t > 40
//   debye       nu >= 2, when the expansion has converged
//   recurrence  otherwise: three-term recurrence in the order from hankel or
//               debye seeds; beyond the turning point J comes from the
//               continued fraction for J_{nu+1}/J_nu and the Wronskian.

#ifndef BESSELEVAL_REFERENCE_REFERENCE_HPP_
#define BESSELEVAL_REFERENCE_REFERENCE_HPP_

#include <optional>
#include <string>

#include <boost/multiprecision/mpfr.hpp>

namespace besseleval::reference {

using Big = boost::multiprecision::number<
    boost::multiprecision::mpfr_float_backend<80>,
    boost::multiprecision::et_off>;

enum class Method { kSeries, kHankel, kDebye, kRecurrence };

std::string method_name(Method m);

// sign * exp(log_abs); sign is 0 for an exact zero.
struct LogMagnitude {
  Big log_abs;
  int sign = 0;

  Big value() const;
  // Rounds to binary64; 0 or +-inf outside its range.
  double to_double() const;
};

struct JY {
  double nu = 0;
  double t = 0;
  LogMagnitude j;
  LogMagnitude y;
  Method method = Method::kSeries;

  // 2 / (pi t (J^2 + Y^2))
  Big alphap() const;
};

// Dispatches on the regime. Throws std::domain_error for nu < 0 or t <= 0
// and std::runtime_error if no regime converges.
JY bessel_jy(double nu, double t);

// Individual regimes, for cross-checks. nullopt when not converged or out
// of range.
std::optional<JY> series_jy(double nu, double t);
std::optional<JY> hankel_jy(double nu, double t);
std::optional<JY> debye_jy(double nu, double t);
std::optional<JY> recurrence_jy(double nu, double t);

// binary64 conveniences.
double alphap(double nu, double t);
double log_abs_j(double nu, double t);
double log_abs_y(double nu, double t);

// Relative difference |approx - exact| / |exact| in binary64.
double relative_error(double approx, const Big& exact);

}  // namespace besseleval::reference

#endif  // BESSELEVAL_REFERENCE_REFERENCE_HPP_
