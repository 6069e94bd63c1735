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

#include "besseleval/phase.hpp"

#include <cmath>
#include <limits>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>

#include "besseleval/errors.hpp"
#include "besseleval/expansions.hpp"

namespace besseleval {
namespace {

template <typename Real>
constexpr Real kPi = std::numbers::pi_v<Real>;

// nu^2 - 1/4 without cancellation near nu = 1/2.
template <typename Real>
Real shifted_square(Real nu) {
  return (nu - Real(0.5)) * (nu + Real(0.5));
}

// q at t = origin + x. Written so that q keeps full relative accuracy near
// its zero at origin = sqrt(c); 1 - c / t^2 does not.
template <typename Real>
Real shifted_q(Real x, Real origin, Real d) {
  const Real t = x + origin;
  return (x * (x + 2 * origin) + d) / (t * t);
}

// Kummer's equation in x = t - origin, solved on [a, b] in x.
template <typename Real>
OdeProblem<Real> kummer_problem(Real nu, Real origin, Real a, Real b) {
  const Real c = shifted_square(nu);
  const Real d = std::fma(origin, origin, -c);  // origin^2 - c
  OdeProblem<Real> p;
  p.rhs = [=](Real x, Real y, Real yp) {
    const Real q = shifted_q(x, origin, d);
    return 2 * y * (q - y * y) + Real(1.5) * yp * yp / y;
  };
  p.rhs_dy = [=](Real x, Real y, Real yp) {
    const Real q = shifted_q(x, origin, d);
    const Real r = yp / y;
    return 2 * q - 6 * y * y - Real(1.5) * r * r;
  };
  p.rhs_dyp = [](Real, Real y, Real yp) { return 3 * yp / y; };
  p.a = a;
  p.b = b;
  return p;
}

template <typename Real>
OdeProblem<Real> riccati_problem(Real nu, Real a, Real b) {
  const Real c = shifted_square(nu);
  OdeProblem<Real> p;
  p.rhs = [c](Real t, Real, Real yp) { return -yp * yp - (1 - c / (t * t)); };
  p.rhs_dy = [](Real, Real, Real) { return Real(0); };
  p.rhs_dyp = [](Real, Real, Real yp) { return -2 * yp; };
  p.a = a;
  p.b = b;
  return p;
}

// Antiderivative of f pinned to `right` at the right end.
template <typename Real>
PiecewiseChebFn<Real> integrate_from_right(const PiecewiseChebFn<Real>& f,
                                           Real right) {
  const int m = f.order() + 1;
  const std::size_t pieces = f.pieces();
  std::vector<Real> values(pieces * m);
  Real carry = right;
  for (std::size_t j = pieces; j-- > 0;) {
    const auto integral = spectral_integrate(f.piece(j));
    const Real total = integral.values[m - 1];
    for (int l = 0; l < m; ++l) {
      values[j * m + l] = carry - (total - integral.values[l]);
    }
    values[j * m + m - 1] = carry;
    carry -= total;
  }
  return PiecewiseChebFn<Real>(f.order(), f.breakpoints(), std::move(values));
}

template <typename Real>
const DebyeExpansion<Real>& cached_debye(int terms) {
  static std::mutex mutex;
  static std::map<int, std::unique_ptr<DebyeExpansion<Real>>> cache;
  std::lock_guard<std::mutex> lock(mutex);
  auto& slot = cache[terms];
  if (!slot) slot = std::make_unique<DebyeExpansion<Real>>(terms);
  return *slot;
}

}  // namespace

template <typename Real>
Real series_cutoff(const AlphaAsymCoeffs<Real>& coeffs, Real tol) {
  // The last two retained terms bound the truncation error.
  const int k_max = static_cast<int>(coeffs.s.size()) - 1;
  Real u = std::numeric_limits<Real>::infinity();
  for (int k = std::max(1, k_max - 1); k <= k_max; ++k) {
    const Real sk = std::abs(coeffs.s[k]);
    if (sk == 0) continue;
    u = std::min(u, std::pow(tol / sk, 1 / static_cast<Real>(k)));
  }
  if (std::isinf(u)) return 0;
  return coeffs.scale / std::sqrt(u);
}

template <typename Real>
Real PhaseSolution<Real>::alpha(Real t) const {
  return alpha_shifted(t - origin);
}

template <typename Real>
Real PhaseSolution<Real>::alphap(Real t) const {
  return alphap_shifted(t - origin);
}

template <typename Real>
Real PhaseSolution<Real>::alphapp(Real t) const {
  return alphapp_shifted(t - origin);
}

template <typename Real>
Real PhaseSolution<Real>::alpha_shifted(Real x) const {
  const Real t = origin + x;
  if (t > b_series && t <= b) return alpha_asym(series, t);
  return alpha_pieces.eval(x);
}

template <typename Real>
Real PhaseSolution<Real>::alphap_shifted(Real x) const {
  const Real t = origin + x;
  if (t > b_series && t <= b) return alphap_asym(series, t);
  return alphap_pieces.eval(x);
}

template <typename Real>
Real PhaseSolution<Real>::alphapp_shifted(Real x) const {
  const Real t = origin + x;
  if (t > b_series && t <= b) return alphapp_asym(series, t);
  return alphapp_pieces.eval(x);
}

template <typename Real>
PhaseSolution<Real> compute_phase_on(Real nu, Real a, Real b,
                                     const PhaseOptions<Real>& options) {
  if (!(nu >= 0) || !(a > 0) || !(a < b)) {
    throw DomainError("invalid phase interval");
  }
  PhaseSolution<Real> out;
  out.nu = nu;
  out.a = a;
  out.b = b;
  out.origin = a;
  out.series = alpha_asym_coeffs(nu, options.asym_terms);
  const Real tol = std::numeric_limits<Real>::epsilon() / 100;
  out.b_series = std::min(b, std::max(series_cutoff(out.series, tol), 2 * a));

  auto problem = kummer_problem(nu, a, Real(0), out.b_series - a);
  problem.kind = BoundaryKind::kTerminal;
  problem.y_bc = alphap_asym(out.series, out.b_series);
  problem.yp_bc = alphapp_asym(out.series, out.b_series);
  auto sol = solve(problem, options.solver);

  out.alpha_pieces =
      integrate_from_right(sol.y, alpha_asym(out.series, out.b_series));
  out.alphap_pieces = std::move(sol.y);
  out.alphapp_pieces = std::move(sol.yp);
  out.pieces_tried = sol.pieces_tried;
  return out;
}

template <typename Real>
PhaseSolution<Real> compute_phase(Real nu, const PhaseOptions<Real>& options) {
  if (!(nu >= 0)) throw DomainError("order must be nonnegative");
  if (nu <= Real(0.5)) return compute_phase_on(nu, Real(2), Real(1000), options);

  const Real a = std::sqrt(shifted_square(nu));
  auto out = compute_phase_on(nu, a, 1000 * nu, options);
  const Real c = nu / 1000;

  // Y at the turning point from the phase.
  const Real al = out.alpha(a);
  const Real ap = out.alphap(a);
  const Real app = out.alphapp(a);
  if (!(std::sin(al) < 0)) {
    throw SolverError("phase does not place a zero of Y beyond the turning point",
                      static_cast<double>(a), static_cast<double>(out.b));
  }
  auto ry = riccati_problem(nu, c, a);
  ry.kind = BoundaryKind::kTerminal;
  ry.y_bc = nu + std::log(-std::sin(al)) - std::log(ap) / 2 +
            std::log(2 / kPi<Real>) / 2;
  ry.yp_bc = ap * std::cos(al) / std::sin(al) - app / (2 * ap);
  auto ys = solve(ry, options.solver);
  out.pieces_tried += ys.pieces_tried;
  out.log_neg_y = LogSolution<Real>{std::move(ys.y), std::move(ys.yp)};

  // J at nu / 1000 from the power series or Debye.
  LogWithSlope<Real> start;
  if (nu >= options.debye_threshold) {
    start = cached_debye<Real>(options.debye_terms).log_j_slope(nu, c);
  } else {
    start = log_j_series_slope(nu, c);
  }
  auto rj = riccati_problem(nu, c, a);
  rj.kind = BoundaryKind::kInitial;
  rj.y_bc = -nu + start.value + std::log(c) / 2;
  rj.yp_bc = start.slope + 1 / (2 * c);
  auto js = solve(rj, options.solver);
  out.pieces_tried += js.pieces_tried;
  out.log_j = LogSolution<Real>{std::move(js.y), std::move(js.yp)};
  return out;
}

template <typename Real>
Real find_t_star(const PhaseSolution<Real>& phase) {
  const Real target = kPi<Real> / 2;
  Real lo = phase.a;
  Real hi = phase.b;
  if (!(phase.alpha(lo) < target) || !(phase.alpha(hi) > target)) {
    throw DomainError("first zero of J lies outside the phase interval");
  }
  Real t = lo;
  for (int it = 0; it < 200; ++it) {
    const Real f = phase.alpha(t) - target;
    if (f == 0) return t;
    if (f < 0) {
      lo = t;
    } else {
      hi = t;
    }
    Real next = t - f / phase.alphap(t);
    if (!(next > lo && next < hi)) next = (lo + hi) / 2;
    if (std::abs(next - t) <= 4 * std::numeric_limits<Real>::epsilon() * t) {
      return next;
    }
    t = next;
  }
  return t;
}

template <typename Real>
Real phase_j(const PhaseSolution<Real>& phase, Real t) {
  if (t >= phase.a && t <= phase.b) {
    return std::sqrt(2 / (kPi<Real> * t)) * std::cos(phase.alpha(t)) /
           std::sqrt(phase.alphap(t));
  }
  if (phase.log_j && t >= phase.log_j->value.lo() && t < phase.a) {
    return std::exp(phase.log_j->value.eval(t) + phase.nu - std::log(t) / 2);
  }
  throw DomainError("point outside the solved range");
}

template <typename Real>
Real phase_y(const PhaseSolution<Real>& phase, Real t) {
  if (t >= phase.a && t <= phase.b) {
    return std::sqrt(2 / (kPi<Real> * t)) * std::sin(phase.alpha(t)) /
           std::sqrt(phase.alphap(t));
  }
  if (phase.log_neg_y && t >= phase.log_neg_y->value.lo() && t < phase.a) {
    return -std::exp(phase.log_neg_y->value.eval(t) - phase.nu -
                     std::log(t) / 2);
  }
  throw DomainError("point outside the solved range");
}

#define BESSELEVAL_INSTANTIATE_PHASE(Real)                                    \
  template struct PhaseSolution<Real>;                                        \
  template Real series_cutoff<Real>(const AlphaAsymCoeffs<Real>&, Real);      \
  template PhaseSolution<Real> compute_phase<Real>(Real,                      \
                                                   const PhaseOptions<Real>&); \
  template PhaseSolution<Real> compute_phase_on<Real>(                        \
      Real, Real, Real, const PhaseOptions<Real>&);                           \
  template Real find_t_star<Real>(const PhaseSolution<Real>&);                \
  template Real phase_j<Real>(const PhaseSolution<Real>&, Real);              \
  template Real phase_y<Real>(const PhaseSolution<Real>&, Real);

BESSELEVAL_INSTANTIATE_PHASE(double)
BESSELEVAL_INSTANTIATE_PHASE(long double)

#undef BESSELEVAL_INSTANTIATE_PHASE

}  // namespace besseleval
