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

#include "besseleval/eval.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "besseleval/errors.hpp"

namespace besseleval {
namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kExpLimit = 700;
// Below this order the deep region uses the power series; the Debye sums
// are only asymptotic and their smallest term is about exp(-2 pi nu).
constexpr double kDebyeMinOrder = 10;
constexpr int kDebyeTerms = 18;

EvalResult from_phase(double t, double alpha, double alphap, int branch) {
  EvalResult r;
  r.region = Region::kOscillatory;
  r.branch = branch;
  const double amp = std::sqrt(2 / (kPi * t * alphap));
  r.j = amp * std::cos(alpha);
  r.y = amp * std::sin(alpha);
  r.alpha = alpha;
  r.alphap = alphap;
  return r;
}

EvalResult from_logs(double log_j, double log_neg_y, int branch) {
  EvalResult r;
  r.region = Region::kNonoscillatory;
  r.branch = branch;
  r.j = log_j >= -kExpLimit ? std::exp(log_j) : 0.0;
  r.y = log_neg_y <= kExpLimit ? -std::exp(log_neg_y)
                               : -std::numeric_limits<double>::infinity();
  r.log_j = log_j;
  r.log_neg_y = log_neg_y;
  return r;
}

double turning_point(double nu) {
  return nu > 0.5 ? std::sqrt((nu - 0.5) * (nu + 0.5)) : 0.0;
}

}  // namespace

PhasePair large_argument_phase(double nu, double t) {
  const double mu = 4 * nu * nu;
  const double m1 = mu - 1;
  const double c1 = m1 / 2;
  const double c3 = m1 * (mu - 25) / 6;
  const double c5 = m1 * ((mu - 114) * mu + 1073) / 5;
  const double c7 = m1 * (((5 * mu - 1535) * mu + 54703) * mu - 375733) / 14;
  const double u = 1 / (4 * t);
  const double u2 = u * u;
  // alpha = t - (nu/2 + 1/4) pi + c1 u + c3 u^3 + c5 u^5 + c7 u^7
  const double tail = u * (c1 + u2 * (c3 + u2 * (c5 + u2 * c7)));
  const double alpha = (t - (nu / 2 + 0.25) * kPi) + tail;
  // d/dt u^k = -4 k u^(k+1)
  const double dtail =
      -4 * u2 * (c1 + u2 * (3 * c3 + u2 * (5 * c5 + u2 * 7 * c7)));
  return {alpha, 1 + dtail};
}

Evaluator::Evaluator(BesselTable table)
    : table_(std::move(table)), nu_max_(table_.nu_max()), debye_(kDebyeTerms) {
  if (!(table_.nu_min_large() <= 2 * (1 + 1e-12))) {
    throw FormatError("table does not reach down to order 2");
  }
  bind_sections();
}

Evaluator::Evaluator(const Evaluator& other)
    : table_(other.table_), nu_max_(other.nu_max_), debye_(other.debye_) {
  bind_sections();
}

Evaluator::Evaluator(Evaluator&& other) noexcept
    : table_(std::move(other.table_)),
      nu_max_(other.nu_max_),
      debye_(std::move(other.debye_)) {
  bind_sections();
}

Evaluator& Evaluator::operator=(Evaluator other) noexcept {
  table_ = std::move(other.table_);
  nu_max_ = other.nu_max_;
  debye_ = std::move(other.debye_);
  bind_sections();
  return *this;
}

void Evaluator::bind_sections() {
  a1_ = &table_.section(SectionId::kA1);
  c1_ = &table_.section(SectionId::kC1);
  a2_ = &table_.section(SectionId::kA2);
  c2_ = &table_.section(SectionId::kC2);
  b1_ = &table_.section(SectionId::kB1);
  b2_ = &table_.section(SectionId::kB2);
}

Evaluator Evaluator::from_file(const std::string& path) {
  return Evaluator(load_table(path));
}

EvalResult Evaluator::eval(double nu, double t) const {
  if (!std::isfinite(nu) || !std::isfinite(t)) {
    throw DomainError("arguments must be finite");
  }
  if (nu < 0) throw DomainError("order must be nonnegative");
  if (!(t > 0)) throw DomainError("argument must be positive");
  if (nu > nu_max_ * (1 + 1e-15)) throw DomainError("order exceeds table range");

  if (nu >= 2) {
    if (t > 1000 * nu) return asymptotic(nu, t);
    const double a = turning_point(nu);
    if (t >= a) return oscillatory_large(nu, t);
    if (t >= nu / 1000) return nonoscillatory_large(nu, t);
    return deep(nu, t);
  }
  if (t > 1000) return asymptotic(nu, t);
  if (t >= 2) return small_table(nu, t);
  return small_series(nu, t);
}

EvalResult Evaluator::oscillatory_large(double nu, double t) const {
  const double a = turning_point(nu);
  // t - a with nu - a = 1/4 / (nu + a) exact to rounding; t - nu is exact
  // near the turning point.
  const double dx = (t - nu) + 0.25 / (nu + a);
  const double x = 1 / nu;
  const double y = std::clamp(dx / (1000 * nu - a), 0.0, 1.0);
  const double alpha = nu * a1_->eval(x, y);
  const double alphap = nu * c1_->eval(x, y);
  return from_phase(t, alpha, alphap, 1);
}

EvalResult Evaluator::nonoscillatory_large(double nu, double t) const {
  const double a = turning_point(nu);
  const double c = nu / 1000;
  const double x = 1 / nu;
  const double y = std::clamp((t - c) / (a - c), 0.0, 1.0);
  const double half_log_t = std::log(t) / 2;
  const double log_j = nu * (b1_->eval(x, y) + 1) - half_log_t;
  const double log_neg_y = nu * (b2_->eval(x, y) - 1) - half_log_t;
  return from_logs(log_j, log_neg_y, 2);
}

EvalResult Evaluator::deep(double nu, double t) const {
  if (nu < kDebyeMinOrder) {
    return from_logs(log_j_series(nu, t).log_abs, series_log_neg_y(nu, t), 3);
  }
  return from_logs(debye_.log_j(nu, t), debye_.log_neg_y(nu, t), 3);
}

EvalResult Evaluator::small_table(double nu, double t) const {
  const double x = nu / 2;
  const double y = std::clamp((t - 2) / 998, 0.0, 1.0);
  return from_phase(t, a2_->eval(x, y), c2_->eval(x, y), 4);
}

EvalResult Evaluator::small_series(double nu, double t) const {
  if (t < turning_point(nu)) {
    return from_logs(log_j_series(nu, t).log_abs, series_log_neg_y(nu, t), 6);
  }
  EvalResult r;
  r.region = Region::kOscillatory;
  r.branch = 5;
  r.j = series_j(nu, t, false);
  r.y = series_y(nu, t);
  r.alphap = 2 / (kPi * t * (r.j * r.j + r.y * r.y));
  // The phase starts at -pi/2 and stays below pi for t < 2 and nu >= 0, so
  // atan2 needs no branch correction here.
  r.alpha = std::atan2(r.y, r.j);
  return r;
}

EvalResult Evaluator::asymptotic(double nu, double t) const {
  const auto p = large_argument_phase(nu, t);
  return from_phase(t, p.alpha, p.alphap, 7);
}

}  // namespace besseleval
