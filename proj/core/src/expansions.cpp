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

#include "besseleval/expansions.hpp"

#include <algorithm>
#include <array>
#include <boost/math/special_functions/gamma.hpp>
#include <boost/multiprecision/cpp_bin_float.hpp>
#include <boost/multiprecision/cpp_int.hpp>
#include <cmath>
#include <limits>
#include <numbers>

#include "besseleval/cheb.hpp"
#include "besseleval/errors.hpp"

namespace besseleval {
namespace {

template <typename Real>
constexpr Real kPi = std::numbers::pi_v<Real>;

constexpr int kMaxSeriesTerms = 200;

// Scaled log of a linear combination x * e^lx + y * e^ly.
template <typename Real>
SignedLog<Real> combine(Real x, Real lx, Real y, Real ly) {
  const Real l = std::max(lx, ly);
  const Real v = x * std::exp(lx - l) + y * std::exp(ly - l);
  if (v == 0) return {-std::numeric_limits<Real>::infinity(), 1};
  return {l + std::log(std::abs(v)), v < 0 ? -1 : 1};
}

template <typename Real>
SignedLog<Real> y_direct(Real mu, Real t) {
  const auto jp = log_j_series(mu, t);
  const auto jm = log_j_series(-mu, t);
  const Real s = sin_pi(mu);
  const Real c = cos_pi(mu);
  // Y = (cos(mu pi) J_mu - J_{-mu}) / sin(mu pi)
  auto r = combine<Real>(c * jp.sign / s, jp.log_abs, -jm.sign / s, jm.log_abs);
  return r;
}

// Values of Y on the near-integer stencil around the integer n.
template <typename Real>
std::array<SignedLog<Real>, 12> y_stencil(Real n, Real t,
                                          std::span<const Real> nodes) {
  std::array<SignedLog<Real>, 12> out;
  for (int k = 0; k < 12; ++k) {
    out[k] = y_direct(n + Real(kStencilHalfWidth) * nodes[k], t);
  }
  return out;
}

template <typename Real>
bool near_integer(Real nu, Real& n) {
  n = std::round(nu);
  return std::abs(nu - n) < Real(kNearIntegerWidth);
}

template <typename Real>
Real horner(const std::vector<Real>& c, Real x) {
  Real s = 0;
  for (std::size_t k = c.size(); k-- > 0;) s = s * x + c[k];
  return s;
}

template <typename Real>
Real horner_derivative(const std::vector<Real>& c, Real x) {
  Real s = 0;
  for (std::size_t k = c.size(); k-- > 1;) s = s * x + static_cast<Real>(k) * c[k];
  return s;
}

}  // namespace

template <typename Real>
Real SignedLog<Real>::value() const {
  return sign * std::exp(log_abs);
}

template <typename Real>
Real sin_pi(Real x) {
  Real r = x - 2 * std::round(x / 2);  // in [-1, 1]
  if (r > Real(0.5)) r = 1 - r;
  if (r < Real(-0.5)) r = -1 - r;
  return std::sin(kPi<Real> * r);
}

template <typename Real>
Real cos_pi(Real x) {
  Real r = std::abs(x - 2 * std::round(x / 2));  // in [0, 1]
  return std::sin(kPi<Real> * (Real(0.5) - r));
}

template <>
long double log_gamma<long double>(long double x) {
  if (!(x > 0)) throw DomainError("log_gamma requires a positive argument");
  if (std::isinf(x)) return x;
  return boost::math::lgamma(x);
}

template <>
double log_gamma<double>(double x) {
  return static_cast<double>(log_gamma<long double>(x));
}

template <typename Real>
SignedLog<Real> log_recip_gamma(Real x) {
  if (x > 0) return {-log_gamma(x), 1};
  if (x == std::round(x)) {
    return {-std::numeric_limits<Real>::infinity(), 1};
  }
  // 1/Gamma(x) = sin(pi x) Gamma(1 - x) / pi
  const Real s = sin_pi(x);
  return {std::log(std::abs(s)) + log_gamma(1 - x) - std::log(kPi<Real>),
          s < 0 ? -1 : 1};
}

template <typename Real>
SignedLog<Real> log_j_series(Real mu, Real t) {
  if (!(t > 0)) throw DomainError("series requires t > 0");
  if (mu < 0 && mu == std::round(mu)) {
    throw DomainError("series order must not be a negative integer");
  }
  const Real w = t * t / 4;
  const Real eps = std::numeric_limits<Real>::epsilon();
  Real sum = 1;
  Real term = 1;
  bool converged = false;
  for (int j = 1; j < kMaxSeriesTerms && !converged; ++j) {
    const Real d = j * (j + mu);
    term *= -w / d;
    sum += term;
    converged = d > w && j + mu > 0 && std::abs(term) <= eps * std::abs(sum) / 4;
  }
  if (!converged) throw DomainError("power series did not converge");
  const auto rg = log_recip_gamma(mu + 1);
  return {mu * std::log(t / 2) + rg.log_abs + std::log(std::abs(sum)),
          rg.sign * (sum < 0 ? -1 : 1)};
}

template <typename Real>
Real series_j(Real nu, Real t, bool with_log) {
  if (with_log) return log_j_series(nu, t).value();
  if (!(t > 0) || nu < 0) throw DomainError("series requires nu >= 0, t > 0");
  const Real w = t * t / 4;
  Real term = std::pow(t / 2, nu) * log_recip_gamma(nu + 1).value();
  Real sum = term;
  for (int j = 1; j < kMaxSeriesTerms; ++j) {
    const Real d = j * (j + nu);
    term *= -w / d;
    sum += term;
    if (d > w && std::abs(term) <= std::numeric_limits<Real>::epsilon() *
                                         std::abs(sum) / 4) {
      return sum;
    }
  }
  throw DomainError("power series did not converge");
}

template <typename Real>
LogWithSlope<Real> log_j_series_slope(Real nu, Real t) {
  if (!(t > 0) || nu < 0) throw DomainError("series requires nu >= 0, t > 0");
  const Real w = t * t / 4;
  const Real eps = std::numeric_limits<Real>::epsilon();
  Real sum = 1;
  Real weighted = 0;  // sum of j * c_j
  Real term = 1;
  bool converged = false;
  for (int j = 1; j < kMaxSeriesTerms && !converged; ++j) {
    const Real d = j * (j + nu);
    term *= -w / d;
    sum += term;
    weighted += j * term;
    converged = d > w && std::abs(term) * j <= eps * std::abs(sum) / 4;
  }
  if (!converged) throw DomainError("power series did not converge");
  return {nu * std::log(t / 2) - log_gamma(nu + 1) + std::log(sum),
          nu / t + 2 / t * weighted / sum};
}

template <typename Real>
Real series_y(Real nu, Real t) {
  using Wide = long double;
  Real n;
  if (!near_integer(nu, n)) {
    return static_cast<Real>(y_direct<Wide>(nu, t).value());
  }
  const auto nodes = ChebBasis<Wide>::get(11).nodes();
  const auto st = y_stencil<Wide>(n, t, nodes);
  const Wide x = (Wide(nu) - n) / Wide(kStencilHalfWidth);
  std::array<Wide, 12> v;
  // Small t: |Y| is large and log|Y| is nearly linear in the order. Larger
  // t: Y may be close to a zero, so interpolate the values themselves.
  const bool use_log =
      t < Real(0.5) && std::all_of(st.begin(), st.end(), [&](const auto& s) {
        return s.sign == st[0].sign && std::isfinite(s.log_abs);
      });
  if (use_log) {
    for (int k = 0; k < 12; ++k) v[k] = st[k].log_abs;
    return static_cast<Real>(st[0].sign *
                             std::exp(barycentric_eval<Wide>(nodes, v, x)));
  }
  for (int k = 0; k < 12; ++k) v[k] = st[k].value();
  return static_cast<Real>(barycentric_eval<Wide>(nodes, v, x));
}

template <typename Real>
Real series_log_neg_y(Real nu, Real t) {
  using Wide = long double;
  Real n;
  if (!near_integer(nu, n)) {
    const auto y = y_direct<Wide>(nu, t);
    if (y.sign > 0 || !std::isfinite(y.log_abs)) {
      throw DomainError("Y is not negative at this point");
    }
    return static_cast<Real>(y.log_abs);
  }
  const auto nodes = ChebBasis<Wide>::get(11).nodes();
  const auto st = y_stencil<Wide>(n, t, nodes);
  std::array<Wide, 12> v;
  for (int k = 0; k < 12; ++k) {
    if (st[k].sign > 0 || !std::isfinite(st[k].log_abs)) {
      throw DomainError("Y is not negative near this integer order");
    }
    v[k] = st[k].log_abs;
  }
  return static_cast<Real>(barycentric_eval<Wide>(
      nodes, v, (Wide(nu) - n) / Wide(kStencilHalfWidth)));
}

template <typename Real>
std::vector<std::vector<Real>> debye_polys(int n) {
  using boost::multiprecision::cpp_rational;
  using Float = boost::multiprecision::cpp_bin_float_50;
  std::vector<std::vector<cpp_rational>> u{{cpp_rational(1)}};
  for (int k = 0; k < n; ++k) {
    const auto& a = u.back();
    std::vector<cpp_rational> b(a.size() + 3);
    for (std::size_t m = 0; m < a.size(); ++m) {
      if (a[m] == 0) continue;
      const cpp_rational half_m = cpp_rational(static_cast<int>(m), 2) * a[m];
      b[m + 1] += half_m + a[m] / cpp_rational(8 * static_cast<int>(m + 1));
      b[m + 3] -= half_m + 5 * a[m] / cpp_rational(8 * static_cast<int>(m + 3));
    }
    u.push_back(std::move(b));
  }
  std::vector<std::vector<Real>> out;
  out.reserve(u.size());
  for (const auto& p : u) {
    std::vector<Real> c;
    c.reserve(p.size());
    for (const auto& q : p) {
      Float f = Float(numerator(q)) / Float(denominator(q));
      c.push_back(f.template convert_to<Real>());
    }
    out.push_back(std::move(c));
  }
  return out;
}

template <typename Real>
struct DebyeExpansion<Real>::Geometry {
  Real p;            // nu / sqrt(nu^2 - t^2)
  Real eta;          // nu acosh(nu / t) - sqrt(nu^2 - t^2)
  Real log_quarter;  // -log(nu^2 - t^2) / 4
  Real root;         // sqrt(nu^2 - t^2)
};

template <typename Real>
DebyeExpansion<Real>::DebyeExpansion(int terms)
    : polys_(debye_polys<Real>(terms)) {}

template <typename Real>
typename DebyeExpansion<Real>::Geometry DebyeExpansion<Real>::geometry(
    Real nu, Real t) const {
  if (!(t > 0) || !(t < nu)) {
    throw DomainError("Debye expansion requires 0 < t < nu");
  }
  const Real z = t / nu;
  const Real one_minus_z2 = z < Real(0.5) ? 1 - z * z : (1 - z) * (1 + z);
  const Real s = std::sqrt(one_minus_z2);
  const Real log_one_minus_z2 =
      z < Real(0.5) ? std::log1p(-z * z) : std::log(one_minus_z2);
  Geometry g;
  g.p = 1 / s;
  g.eta = nu * (std::log1p(s) - std::log(z) - s);
  g.log_quarter = -(2 * std::log(nu) + log_one_minus_z2) / 4;
  g.root = nu * s;
  return g;
}

template <typename Real>
Real DebyeExpansion<Real>::sum(Real p, Real inv_nu, bool alternate) const {
  Real s = 0;
  Real scale = 1;
  for (const auto& poly : polys_) {
    s += scale * horner(poly, p);
    scale *= alternate ? -inv_nu : inv_nu;
  }
  return s;
}

template <typename Real>
Real DebyeExpansion<Real>::sum_slope(Real p, Real inv_nu) const {
  Real s = 0;
  Real scale = 1;
  for (const auto& poly : polys_) {
    s += scale * horner_derivative(poly, p);
    scale *= inv_nu;
  }
  return s;
}

template <typename Real>
Real DebyeExpansion<Real>::log_j(Real nu, Real t) const {
  const auto g = geometry(nu, t);
  return -g.eta + g.log_quarter + std::log(sum(g.p, 1 / nu, false)) -
         std::log(2 * kPi<Real>) / 2;
}

template <typename Real>
Real DebyeExpansion<Real>::log_neg_y(Real nu, Real t) const {
  const auto g = geometry(nu, t);
  return g.eta + g.log_quarter + std::log(sum(g.p, 1 / nu, true)) +
         std::log(2 / kPi<Real>) / 2;
}

template <typename Real>
LogWithSlope<Real> DebyeExpansion<Real>::log_j_slope(Real nu, Real t) const {
  const auto g = geometry(nu, t);
  const Real s = sum(g.p, 1 / nu, false);
  const Real ds = sum_slope(g.p, 1 / nu);
  const Real value = -g.eta + g.log_quarter + std::log(s) -
                     std::log(2 * kPi<Real>) / 2;
  const Real slope = g.root / t + t / (2 * g.root * g.root) +
                     ds / s * g.p * g.p * g.p * t / (nu * nu);
  return {value, slope};
}

template <typename Real>
AlphaAsymCoeffs<Real> alpha_asym_coeffs(Real nu, int terms) {
  if (nu < 0 || terms < 0) throw DomainError("invalid asymptotic request");
  AlphaAsymCoeffs<Real> c;
  c.nu = nu;
  c.scale = std::max(nu, Real(1));
  const Real nu2 = (nu / c.scale) * (nu / c.scale);
  const Real inv4s2 = 1 / (4 * c.scale * c.scale);
  c.r.assign(terms + 1, Real(0));
  c.s.assign(terms + 1, Real(0));
  c.r[0] = 1;
  c.s[0] = 1;
  for (int k = 1; k <= terms; ++k) {
    const Real odd = static_cast<Real>(2 * k - 1);
    c.r[k] = c.r[k - 1] * odd / (2 * k) * (nu2 - odd * odd * inv4s2);
  }
  for (int k = 1; k <= terms; ++k) {
    Real acc = 0;
    for (int j = 1; j <= k; ++j) acc -= c.s[k - j] * c.r[j];
    c.s[k] = acc;
  }
  return c;
}

template <typename Real>
Real alphap_asym(const AlphaAsymCoeffs<Real>& c, Real t) {
  const Real u = (c.scale / t) * (c.scale / t);
  return horner(c.s, u);
}

template <typename Real>
Real alpha_asym(const AlphaAsymCoeffs<Real>& c, Real t) {
  const Real u = (c.scale / t) * (c.scale / t);
  Real s = 0;
  for (std::size_t k = c.s.size(); k-- > 1;) {
    s = s * u + c.s[k] / (1 - 2 * static_cast<Real>(k));
  }
  s *= u;
  return t - kPi<Real> / 4 - kPi<Real> * c.nu / 2 + t * s;
}

template <typename Real>
Real alphapp_asym(const AlphaAsymCoeffs<Real>& c, Real t) {
  const Real u = (c.scale / t) * (c.scale / t);
  Real s = 0;
  for (std::size_t k = c.s.size(); k-- > 1;) {
    s = s * u + 2 * static_cast<Real>(k) * c.s[k];
  }
  return -s * u / t;
}

#define BESSELEVAL_INSTANTIATE_EXPANSIONS(Real)                               \
  template struct SignedLog<Real>;                                            \
  template Real sin_pi<Real>(Real);                                           \
  template Real cos_pi<Real>(Real);                                           \
  template SignedLog<Real> log_recip_gamma<Real>(Real);                       \
  template SignedLog<Real> log_j_series<Real>(Real, Real);                    \
  template Real series_j<Real>(Real, Real, bool);                             \
  template LogWithSlope<Real> log_j_series_slope<Real>(Real, Real);           \
  template Real series_y<Real>(Real, Real);                                   \
  template Real series_log_neg_y<Real>(Real, Real);                           \
  template std::vector<std::vector<Real>> debye_polys<Real>(int);             \
  template class DebyeExpansion<Real>;                                        \
  template AlphaAsymCoeffs<Real> alpha_asym_coeffs<Real>(Real, int);          \
  template Real alpha_asym<Real>(const AlphaAsymCoeffs<Real>&, Real);         \
  template Real alphap_asym<Real>(const AlphaAsymCoeffs<Real>&, Real);        \
  template Real alphapp_asym<Real>(const AlphaAsymCoeffs<Real>&, Real);

BESSELEVAL_INSTANTIATE_EXPANSIONS(double)
BESSELEVAL_INSTANTIATE_EXPANSIONS(long double)

#undef BESSELEVAL_INSTANTIATE_EXPANSIONS

}  // namespace besseleval
