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

#include "besseleval/reference/reference.hpp"

#include <cmath>
#include <initializer_list>
#include <limits>
#include <stdexcept>
#include <vector>

#include <boost/math/constants/constants.hpp>

namespace besseleval::reference {
namespace {

// Truncation estimate an asymptotic regime must reach to be accepted.
const Big& accept_term() {
  static const Big v("1e-32");
  return v;
}

// Series terms below this fraction of the largest term are dropped.
const Big& negligible() {
  static const Big v("1e-85");
  return v;
}

// Largest tolerated ratio between the biggest term of a sum and the sum.
const Big& max_loss() {
  static const Big v("1e40");
  return v;
}

constexpr int kMaxDebyeTerms = 40;
constexpr double kSeriesMaxT = 40;

Big pi() { return boost::math::constants::pi<Big>(); }

Big lgamma_big(const Big& x) {
  Big r;
  int sign = 0;
  mpfr_lgamma(r.backend().data(), &sign, x.backend().data(), MPFR_RNDN);
  return r;
}

Big digamma_big(const Big& x) {
  Big r;
  mpfr_digamma(r.backend().data(), x.backend().data(), MPFR_RNDN);
  return r;
}

int sign_of(const Big& x) { return x > 0 ? 1 : (x < 0 ? -1 : 0); }

LogMagnitude from_value(const Big& x) {
  LogMagnitude out;
  out.sign = sign_of(x);
  out.log_abs = out.sign == 0 ? Big(0) : Big(log(abs(x)));
  return out;
}

LogMagnitude make(const Big& log_abs, int sign) {
  LogMagnitude out;
  out.log_abs = log_abs;
  out.sign = sign;
  return out;
}

// Sum of terms given in log form. Clears *ok on heavy cancellation.
LogMagnitude log_sum(std::initializer_list<LogMagnitude> terms, bool* ok) {
  bool any = false;
  Big top;
  for (const auto& t : terms) {
    if (t.sign == 0) continue;
    if (!any || t.log_abs > top) top = t.log_abs;
    any = true;
  }
  if (!any) return LogMagnitude{};
  Big acc = 0;
  for (const auto& t : terms) {
    if (t.sign == 0) continue;
    acc += t.sign * exp(t.log_abs - top);
  }
  if (abs(acc) * max_loss() < 1) *ok = false;
  LogMagnitude out = from_value(acc);
  if (out.sign != 0) out.log_abs += top;
  return out;
}

// Debye polynomials u_k(p), k = 0..kMaxDebyeTerms, as dense coefficients.
const std::vector<std::vector<Big>>& debye_u() {
  static const std::vector<std::vector<Big>> polys = [] {
    std::vector<std::vector<Big>> u(kMaxDebyeTerms + 1);
    u[0] = {Big(1)};
    for (int k = 0; k < kMaxDebyeTerms; ++k) {
      std::vector<Big> next(3 * (k + 1) + 1, Big(0));
      for (std::size_t m = 0; m < u[k].size(); ++m) {
        const Big& c = u[k][m];
        if (c == 0) continue;
        const Big mm(static_cast<int>(m));
        next[m + 1] += c * (mm / 2 + Big(1) / (8 * (mm + 1)));
        next[m + 3] -= c * (mm / 2 + Big(5) / (8 * (mm + 3)));
      }
      u[k + 1] = std::move(next);
    }
    return u;
  }();
  return polys;
}

Big horner(const std::vector<Big>& c, const Big& x) {
  Big r = 0;
  for (std::size_t m = c.size(); m-- > 0;) r = r * x + c[m];
  return r;
}

// u_k(i c) / i^k, which is real.
Big debye_u_imag(const std::vector<Big>& coeffs, int k, const Big& c) {
  std::vector<Big> rot(coeffs.size(), Big(0));
  for (std::size_t m = static_cast<std::size_t>(k); m < coeffs.size(); m += 2) {
    rot[m] = ((m - k) / 2) % 2 == 0 ? coeffs[m] : Big(-coeffs[m]);
  }
  return horner(rot, c);
}

struct Pair {
  Big j;
  Big y;
};

std::optional<Pair> hankel_values(const Big& mu, const Big& t) {
  const Big mu4 = 4 * mu * mu;
  Big a = 1;
  Big p = 1;
  Big q = 0;
  Big prev = 1;
  Big top = 1;
  bool converged = false;
  for (int k = 1; k < 100000; ++k) {
    const Big odd(2 * k - 1);
    const Big next = a * (mu4 - odd * odd) / (8 * k * t);
    if (next == 0) {
      converged = true;
      break;
    }
    if (abs(next) > abs(prev) && k > mu + 2) {
      converged = abs(prev) < accept_term();
      break;
    }
    a = next;
    prev = a;
    if (abs(a) > top) top = abs(a);
    const int sgn = ((k / 2) % 2 == 0) ? 1 : -1;
    if (k % 2 == 0) {
      p += sgn * a;
    } else {
      q += sgn * a;
    }
    if (abs(a) < negligible()) {
      converged = true;
      break;
    }
  }
  if (!converged || top > max_loss()) return std::nullopt;
  const Big chi = t - (mu / 2 + Big(1) / 4) * pi();
  const Big f = sqrt(2 / (pi() * t));
  const Big c = cos(chi);
  const Big s = sin(chi);
  return Pair{f * (p * c - q * s), f * (p * s + q * c)};
}

std::optional<JY> debye_nonosc(const Big& nu, const Big& t) {
  const Big s = sqrt((nu - t) * (nu + t)) / nu;
  if (s == 0) return std::nullopt;
  const Big p = 1 / s;
  const auto& u = debye_u();
  Big plus = 0;
  Big minus = 0;
  Big smallest = 1;
  Big scale = 1;
  Big prev_mag = std::numeric_limits<double>::max();
  bool converged = false;
  for (int k = 0; k <= kMaxDebyeTerms; ++k) {
    const Big term = horner(u[k], p) / scale;
    const Big mag = abs(term);
    if (k > 0 && mag > prev_mag) break;
    plus += term;
    minus += (k % 2 == 0) ? term : Big(-term);
    prev_mag = mag;
    if (mag < smallest) smallest = mag;
    if (mag < negligible()) {
      converged = true;
      break;
    }
    scale *= nu;
  }
  if (!converged) converged = smallest < accept_term();
  if (!converged) return std::nullopt;
  const Big z = t / nu;
  const Big eta = nu * (log((1 + s) / z) - s);
  JY out;
  out.method = Method::kDebye;
  out.j = make(-eta - log(2 * pi() * nu * s) / 2 + log(abs(plus)),
               sign_of(plus));
  out.y = make(eta - log(pi() * nu * s / 2) / 2 + log(abs(minus)),
               -sign_of(minus));
  return out;
}

std::optional<Pair> debye_osc_values(const Big& nu, const Big& t) {
  const Big nu_s = sqrt((t - nu) * (t + nu));
  if (nu_s == 0) return std::nullopt;
  const Big c = nu / nu_s;
  const auto& u = debye_u();
  Big p = 0;
  Big q = 0;
  Big smallest = 1;
  Big scale = 1;
  Big prev_mag = std::numeric_limits<double>::max();
  bool converged = false;
  for (int k = 0; k <= kMaxDebyeTerms; ++k) {
    const Big term = debye_u_imag(u[k], k, c) / scale;
    const Big mag = abs(term);
    if (k > 0 && mag > prev_mag) break;
    const int sgn = ((k / 2) % 2 == 0) ? 1 : -1;
    if (k % 2 == 0) {
      p += sgn * term;
    } else {
      q += sgn * term;
    }
    prev_mag = mag;
    if (mag < smallest) smallest = mag;
    if (mag < negligible()) {
      converged = true;
      break;
    }
    scale *= nu;
  }
  if (!converged) converged = smallest < accept_term();
  if (!converged) return std::nullopt;
  const Big xi = nu_s - nu * atan(nu_s / nu) - pi() / 4;
  const Big a = sqrt(2 / (pi() * nu_s));
  const Big cx = cos(xi);
  const Big sx = sin(xi);
  return Pair{a * (p * cx + q * sx), a * (p * sx - q * cx)};
}

JY from_pair(const Pair& v, double nu, double t, Method m) {
  JY out;
  out.nu = nu;
  out.t = t;
  out.j = from_value(v.j);
  out.y = from_value(v.y);
  out.method = m;
  return out;
}

// J_{nu+1} / J_nu by the continued fraction, modified Lentz.
std::optional<Big> j_ratio(const Big& nu, const Big& t) {
  const Big tiny("1e-300");
  const Big eps("1e-75");
  Big f = tiny;
  Big c = f;
  Big d = 0;
  for (long k = 1; k < 10000000; ++k) {
    const Big b = 2 * (nu + k) / t;
    const Big a = k == 1 ? Big(1) : Big(-1);
    d = b + a * d;
    if (d == 0) d = tiny;
    c = b + a / c;
    if (c == 0) c = tiny;
    d = 1 / d;
    const Big delta = c * d;
    f *= delta;
    if (abs(delta - 1) < eps) return f;
  }
  return std::nullopt;
}

}  // namespace

std::string method_name(Method m) {
  switch (m) {
    case Method::kSeries:
      return "series";
    case Method::kHankel:
      return "hankel";
    case Method::kDebye:
      return "debye";
    case Method::kRecurrence:
      return "recurrence";
  }
  return "unknown";
}

Big LogMagnitude::value() const {
  if (sign == 0) return Big(0);
  return sign * exp(log_abs);
}

double LogMagnitude::to_double() const {
  if (sign == 0) return 0.0;
  if (log_abs > 710) return sign * std::numeric_limits<double>::infinity();
  if (log_abs < -746) return sign * 0.0;
  return value().convert_to<double>();
}

Big JY::alphap() const {
  const Big top = j.log_abs > y.log_abs ? j.log_abs : y.log_abs;
  Big sum = 0;
  if (j.sign != 0) sum += exp(2 * (j.log_abs - top));
  if (y.sign != 0) sum += exp(2 * (y.log_abs - top));
  const Big log_den = log(sum) + 2 * top;
  return exp(log(2 / (pi() * Big(t))) - log_den);
}

std::optional<JY> series_jy(double nu_d, double t_d) {
  if (!(nu_d >= 0) || !(t_d > 0)) return std::nullopt;
  const Big nu(nu_d);
  const Big half = Big(t_d) / 2;
  const Big w = half * half;
  const Big log_half = log(half);

  Big sum = 1;
  Big term = 1;
  Big top = 1;
  for (long k = 1;; ++k) {
    term *= -w / (Big(k) * (nu + k));
    sum += term;
    if (abs(term) > top) top = abs(term);
    if (2 * w < Big(k) * (nu + k) && abs(term) < negligible() * top) break;
    if (k > 10000000) return std::nullopt;
  }
  if (abs(sum) * max_loss() < top) return std::nullopt;
  JY out;
  out.nu = nu_d;
  out.t = t_d;
  out.method = Method::kSeries;
  out.j = make(nu * log_half - lgamma_big(nu + 1) + log(abs(sum)),
               sign_of(sum));

  if (nu_d != std::floor(nu_d)) {
    const Big frac = nu - floor(nu);
    const Big cot = cos(pi() * frac) / sin(pi() * frac);
    const LogMagnitude a = make(out.j.log_abs + log(abs(cot)),
                                out.j.sign * sign_of(cot));
    Big tsum = 1;
    Big tau = 1;
    Big ttop = 1;
    const bool early = nu > 2 * w + 10;
    for (long k = 1;; ++k) {
      tau *= w / (Big(k) * (nu - k));
      tsum += tau;
      if (abs(tau) > ttop) ttop = abs(tau);
      const bool small = abs(tau) < negligible() * ttop;
      if (small && early && nu > k) break;
      if (small && Big(k) > nu && 2 * w < Big(k) * (Big(k) - nu)) break;
      if (k > 10000000) return std::nullopt;
    }
    if (abs(tsum) * max_loss() < ttop) return std::nullopt;
    const LogMagnitude b =
        make(-nu * log_half + lgamma_big(nu) - log(pi()) + log(abs(tsum)),
             -sign_of(tsum));
    bool ok = true;
    out.y = log_sum({a, b}, &ok);
    if (!ok) return std::nullopt;
    return out;
  }

  // Integer order.
  const long n = static_cast<long>(nu_d);
  const LogMagnitude c1 =
      make(log(Big(2)) - log(pi()) + out.j.log_abs + log(abs(log_half)),
           out.j.sign * sign_of(log_half));
  LogMagnitude c2;
  if (n >= 1) {
    Big phi = 1;
    Big fsum = 1;
    const bool early = n > 2 * w + 10;
    for (long k = 1; k < n; ++k) {
      phi *= w / (Big(k) * Big(n - k));
      fsum += phi;
      if (early && phi < negligible()) break;
    }
    c2 = make(-nu * log_half + lgamma_big(nu) - log(pi()) + log(fsum), -1);
  }
  const Big gamma_e = boost::math::constants::euler<Big>();
  Big psi1 = -gamma_e;
  Big psi2 = digamma_big(nu + 1);
  Big rho = 1;
  Big s3 = 0;
  Big top3 = 0;
  for (long k = 0;; ++k) {
    const Big piece = (psi1 + psi2) * rho;
    s3 += piece;
    if (abs(piece) > top3) top3 = abs(piece);
    const long k1 = k + 1;
    if (2 * w < Big(k1) * Big(n + k1) && abs(piece) < negligible() * top3 &&
        k > 0) {
      break;
    }
    psi1 += Big(1) / k1;
    psi2 += Big(1) / Big(n + k1);
    rho *= -w / (Big(k1) * Big(n + k1));
    if (k > 10000000) return std::nullopt;
  }
  if (abs(s3) * max_loss() < top3) return std::nullopt;
  const LogMagnitude c3 =
      make(nu * log_half - lgamma_big(nu + 1) - log(pi()) + log(abs(s3)),
           -sign_of(s3));
  bool ok = true;
  out.y = log_sum({c1, c2, c3}, &ok);
  if (!ok) return std::nullopt;
  return out;
}

std::optional<JY> hankel_jy(double nu, double t) {
  if (!(nu >= 0) || !(t > 0)) return std::nullopt;
  auto v = hankel_values(Big(nu), Big(t));
  if (!v) return std::nullopt;
  return from_pair(*v, nu, t, Method::kHankel);
}

std::optional<JY> debye_jy(double nu_d, double t_d) {
  if (!(nu_d > 0) || !(t_d > 0) || nu_d == t_d) return std::nullopt;
  const Big nu(nu_d);
  const Big t(t_d);
  if (t < nu) {
    auto out = debye_nonosc(nu, t);
    if (!out) return std::nullopt;
    out->nu = nu_d;
    out->t = t_d;
    return out;
  }
  auto v = debye_osc_values(nu, t);
  if (!v) return std::nullopt;
  return from_pair(*v, nu_d, t_d, Method::kDebye);
}

std::optional<JY> recurrence_jy(double nu_d, double t_d) {
  if (!(nu_d >= 1) || !(t_d > 0)) return std::nullopt;
  const Big nu(nu_d);
  const Big t(t_d);

  // Seeds at mu0 and mu0 + 1, far enough below t that an asymptotic form
  // converges there.
  double width = 30;
  Pair s0;
  Pair s1;
  long m = 0;
  Big mu0;
  for (;;) {
    const double target = t_d - width * std::cbrt(t_d);
    m = static_cast<long>(std::ceil(nu_d - target));
    if (m < 1) m = 1;
    if (nu_d - static_cast<double>(m) < 2) {
      m = static_cast<long>(std::floor(nu_d));
      mu0 = nu - m;
      auto a = hankel_values(mu0, t);
      auto b = hankel_values(mu0 + 1, t);
      if (!a || !b) return std::nullopt;
      s0 = *a;
      s1 = *b;
      break;
    }
    mu0 = nu - m;
    auto a = debye_osc_values(mu0, t);
    auto b = debye_osc_values(mu0 + 1, t);
    if (a && b) {
      s0 = *a;
      s1 = *b;
      break;
    }
    width *= 2;
  }

  // Forward recurrence to orders nu and nu + 1.
  Big y0 = s0.y;
  Big y1 = s1.y;
  Big j0 = s0.j;
  Big j1 = s1.j;
  const bool j_forward = nu_d <= t_d;
  for (long k = 1; k <= m; ++k) {
    const Big mu = mu0 + k;
    const Big y2 = 2 * mu / t * y1 - y0;
    y0 = y1;
    y1 = y2;
    if (j_forward) {
      const Big j2 = 2 * mu / t * j1 - j0;
      j0 = j1;
      j1 = j2;
    }
  }
  // y0 = Y_nu, y1 = Y_{nu+1}.
  Big j_nu = j0;
  if (!j_forward) {
    auto rho = j_ratio(nu, t);
    if (!rho) return std::nullopt;
    j_nu = 2 / (pi() * t) / (*rho * y0 - y1);
  }
  return from_pair(Pair{j_nu, y0}, nu_d, t_d, Method::kRecurrence);
}

JY bessel_jy(double nu, double t) {
  if (!(nu >= 0) || !(t > 0) || !std::isfinite(nu) || !std::isfinite(t)) {
    throw std::domain_error("reference: need nu >= 0 and t > 0");
  }
  if (t <= kSeriesMaxT || t * t <= nu) {
    if (auto r = series_jy(nu, t)) return *r;
  } else if (nu < 2) {
    if (auto r = hankel_jy(nu, t)) return *r;
  } else {
    if (auto r = debye_jy(nu, t)) return *r;
    if (auto r = recurrence_jy(nu, t)) return *r;
  }
  throw std::runtime_error("reference: no regime converged");
}

double alphap(double nu, double t) {
  return bessel_jy(nu, t).alphap().convert_to<double>();
}

double log_abs_j(double nu, double t) {
  return bessel_jy(nu, t).j.log_abs.convert_to<double>();
}

double log_abs_y(double nu, double t) {
  return bessel_jy(nu, t).y.log_abs.convert_to<double>();
}

double relative_error(double approx, const Big& exact) {
  if (exact == 0) return approx == 0 ? 0.0 : std::abs(approx);
  return (abs(Big(approx) - exact) / abs(exact)).convert_to<double>();
}

}  // namespace besseleval::reference
