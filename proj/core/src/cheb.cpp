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

#include "besseleval/cheb.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>
#include <string>

#include "besseleval/errors.hpp"

namespace besseleval {
namespace {

// cos(pi m / n) with the argument reduced first so large m stays accurate.
template <typename Real>
Real cos_pi_ratio(long m, long n) {
  m %= 2 * n;
  if (m < 0) m += 2 * n;
  return std::cos(std::numbers::pi_v<Real> * static_cast<Real>(m) /
                  static_cast<Real>(n));
}

template <typename Real>
Real edge_weight(int k, int n) {
  return (k == 0 || k == n) ? Real(0.5) : Real(1);
}

// Maps x in [a, b] to [-1, 1]; tolerates a few ulps of overshoot.
template <typename Real>
Real to_reference(Real x, Real a, Real b) {
  Real xhat = (Real(2) * x - (a + b)) / (b - a);
  if (!(std::abs(xhat) <= Real(1) + Real(1e-12))) {
    throw DomainError("point outside expansion interval");
  }
  return std::clamp(xhat, Real(-1), Real(1));
}

template <typename Real>
Real bary_reference(std::span<const Real> nodes, std::span<const Real> weights,
                    std::span<const Real> values, Real xhat) {
  Real num = 0;
  Real den = 0;
  for (std::size_t j = 0; j < nodes.size(); ++j) {
    Real d = xhat - nodes[j];
    if (d == 0) return values[j];
    Real w = weights[j] / d;
    num += w * values[j];
    den += w;
  }
  return num / den;
}

}  // namespace

template <typename Real>
ChebGrid<Real> cheb_nodes(int order, Real a, Real b) {
  if (order < 1) throw DomainError("Chebyshev order must be positive");
  if (!(a < b)) throw DomainError("empty Chebyshev interval");
  const auto& basis = ChebBasis<Real>::get(order);
  ChebGrid<Real> grid{order, a, b, {}};
  grid.nodes.resize(order + 1);
  Real mid = (a + b) / 2;
  Real half = (b - a) / 2;
  for (int j = 0; j <= order; ++j) {
    grid.nodes[j] = mid + half * basis.nodes()[j];
  }
  grid.nodes.front() = a;
  grid.nodes.back() = b;
  return grid;
}

template <typename Real>
ChebBasis<Real>::ChebBasis(int order) : order_(order) {
  const int n = order;
  const int m = n + 1;
  constexpr Real pi = std::numbers::pi_v<Real>;

  // sin form keeps the grid exactly symmetric with 0 at the centre.
  nodes_.resize(m);
  for (int j = 0; j <= n; ++j) {
    int k = 2 * j - n;
    nodes_[j] = k == 0 ? Real(0)
                       : std::sin(pi * static_cast<Real>(k) /
                                  static_cast<Real>(2 * n));
  }
  nodes_.front() = -1;
  nodes_.back() = 1;

  // T_k(rho_l) = (-1)^k cos(pi k l / n).
  auto cheb_at_node = [n](int k, int l) {
    Real c = cos_pi_ratio<Real>(static_cast<long>(k) * l, n);
    return (k % 2 == 0) ? c : -c;
  };

  transform_.assign(static_cast<std::size_t>(m) * m, Real(0));
  for (int k = 0; k <= n; ++k) {
    for (int l = 0; l <= n; ++l) {
      transform_[k * m + l] =
          Real(2) / n * edge_weight<Real>(l, n) * cheb_at_node(k, l);
    }
  }

  // Column j of the integration matrix: interpolate e_j, integrate the
  // Chebyshev series term by term, evaluate at the nodes.
  integration_.assign(static_cast<std::size_t>(m) * m, Real(0));
  std::vector<Real> c(m);
  std::vector<Real> g(m + 1);
  for (int j = 0; j <= n; ++j) {
    for (int k = 0; k <= n; ++k) {
      c[k] = transform_[k * m + j] * edge_weight<Real>(k, n);
    }
    std::fill(g.begin(), g.end(), Real(0));
    g[1] += c[0];
    if (n >= 1) g[2] += c[1] / 4;
    for (int k = 2; k <= n; ++k) {
      g[k + 1] += c[k] / (2 * (k + 1));
      g[k - 1] -= c[k] / (2 * (k - 1));
    }
    Real at_minus_one = 0;
    for (int k = 0; k <= n + 1; ++k) {
      at_minus_one += (k % 2 == 0) ? g[k] : -g[k];
    }
    for (int l = 0; l <= n; ++l) {
      Real s = 0;
      for (int k = 0; k <= n + 1; ++k) s += g[k] * cheb_at_node(k, l);
      integration_[l * m + j] = s - at_minus_one;
    }
  }

  weights_.resize(m);
  for (int j = 0; j <= n; ++j) {
    weights_[j] = ((j % 2 == 0) ? Real(1) : Real(-1)) * edge_weight<Real>(j, n);
  }
}

template <typename Real>
const ChebBasis<Real>& ChebBasis<Real>::get(int order) {
  if (order < 1) throw DomainError("Chebyshev order must be positive");
  static std::mutex mutex;
  static std::map<int, std::unique_ptr<ChebBasis>> cache;
  std::lock_guard<std::mutex> lock(mutex);
  auto& slot = cache[order];
  if (!slot) slot = std::make_unique<ChebBasis>(order);
  return *slot;
}

template <typename Real>
std::vector<Real> coeffs_from_values(std::span<const Real> values) {
  if (values.size() < 2) throw DomainError("need at least two node values");
  const int n = static_cast<int>(values.size()) - 1;
  const auto& basis = ChebBasis<Real>::get(n);
  const auto t = basis.transform();
  std::vector<Real> b(n + 1);
  for (int k = 0; k <= n; ++k) {
    Real s = 0;
    for (int l = 0; l <= n; ++l) s += t[k * (n + 1) + l] * values[l];
    b[k] = s;
  }
  return b;
}

template <typename Real>
Real chebyshev_sum(std::span<const Real> b, Real x) {
  const std::size_t m = b.size();
  if (m == 0) return 0;
  if (m == 1) return b[0] / 2;
  Real two_x = 2 * x;
  Real b1 = 0;
  Real b2 = 0;
  for (std::size_t k = m - 1; k >= 1; --k) {
    Real ck = (k == m - 1) ? b[k] / 2 : b[k];
    Real tmp = ck + two_x * b1 - b2;
    b2 = b1;
    b1 = tmp;
  }
  return b[0] / 2 + x * b1 - b2;
}

template <typename Real>
Real UnivariateExpansion<Real>::eval(Real x) const {
  return barycentric_eval(*this, x);
}

template <typename Real>
std::vector<Real> UnivariateExpansion<Real>::coeffs() const {
  return coeffs_from_values<Real>(values);
}

template <typename Real>
UnivariateExpansion<Real> make_expansion(const std::function<Real(Real)>& f,
                                         int order, Real a, Real b) {
  UnivariateExpansion<Real> e{cheb_nodes(order, a, b), {}};
  e.values.reserve(order + 1);
  for (Real x : e.grid.nodes) e.values.push_back(f(x));
  return e;
}

template <typename Real>
Real barycentric_eval(const UnivariateExpansion<Real>& fn, Real x) {
  const auto& basis = ChebBasis<Real>::get(fn.grid.order);
  // Mapping to [-1, 1] rounds, so nodes are matched before the map.
  for (std::size_t j = 0; j < fn.grid.nodes.size(); ++j) {
    if (x == fn.grid.nodes[j]) return fn.values[j];
  }
  Real xhat = to_reference(x, fn.grid.a, fn.grid.b);
  return bary_reference<Real>(basis.nodes(), basis.weights(), fn.values, xhat);
}

template <typename Real>
Real barycentric_eval(std::span<const Real> nodes,
                      std::span<const Real> values, Real x) {
  if (nodes.size() < 2 || nodes.size() != values.size()) {
    throw DomainError("node and value counts differ");
  }
  if (x < nodes.front() || x > nodes.back()) {
    throw DomainError("point outside interpolation interval");
  }
  const auto& basis =
      ChebBasis<Real>::get(static_cast<int>(nodes.size()) - 1);
  Real num = 0;
  Real den = 0;
  for (std::size_t j = 0; j < nodes.size(); ++j) {
    Real d = x - nodes[j];
    if (d == 0) return values[j];
    Real w = basis.weights()[j] / d;
    num += w * values[j];
    den += w;
  }
  return num / den;
}

template <typename Real>
UnivariateExpansion<Real> spectral_integrate(
    const UnivariateExpansion<Real>& fn) {
  const int n = fn.grid.order;
  const auto s = ChebBasis<Real>::get(n).integration();
  Real half = (fn.grid.b - fn.grid.a) / 2;
  UnivariateExpansion<Real> out{fn.grid, std::vector<Real>(n + 1)};
  for (int l = 0; l <= n; ++l) {
    Real acc = 0;
    for (int j = 0; j <= n; ++j) acc += s[l * (n + 1) + j] * fn.values[j];
    out.values[l] = half * acc;
  }
  return out;
}

template <typename Real>
std::size_t locate(std::span<const Real> breakpoints, Real x) {
  if (breakpoints.size() < 2 || !(x >= breakpoints.front()) ||
      !(x <= breakpoints.back())) {
    throw DomainError("point outside breakpoint range");
  }
  auto it = std::upper_bound(breakpoints.begin(), breakpoints.end(), x);
  std::size_t j = static_cast<std::size_t>(it - breakpoints.begin());
  if (j == 0) return 0;
  return std::min(j - 1, breakpoints.size() - 2);
}

template <typename Real>
PiecewiseChebFn<Real>::PiecewiseChebFn(int order, std::vector<Real> breakpoints,
                                       std::vector<Real> values)
    : order_(order),
      basis_(order >= 1 ? &ChebBasis<Real>::get(order) : nullptr),
      breakpoints_(std::move(breakpoints)),
      values_(std::move(values)) {
  if (order_ < 1 || breakpoints_.size() < 2 ||
      values_.size() != (breakpoints_.size() - 1) * (order_ + 1)) {
    throw DomainError("inconsistent piecewise Chebyshev data");
  }
  for (std::size_t j = 0; j + 1 < breakpoints_.size(); ++j) {
    if (!(breakpoints_[j] < breakpoints_[j + 1])) {
      throw DomainError("breakpoints must increase strictly");
    }
  }
}

template <typename Real>
std::span<const Real> PiecewiseChebFn<Real>::piece_values(std::size_t j) const {
  return std::span<const Real>(values_).subspan(j * (order_ + 1), order_ + 1);
}

template <typename Real>
UnivariateExpansion<Real> PiecewiseChebFn<Real>::piece(std::size_t j) const {
  auto v = piece_values(j);
  return {cheb_nodes(order_, breakpoints_[j], breakpoints_[j + 1]),
          std::vector<Real>(v.begin(), v.end())};
}

template <typename Real>
Real PiecewiseChebFn<Real>::eval(Real x) const {
  std::size_t j = locate<Real>(breakpoints_, x);
  Real xhat = to_reference(x, breakpoints_[j], breakpoints_[j + 1]);
  return bary_reference<Real>(basis_->nodes(), basis_->weights(),
                              piece_values(j), xhat);
}

template <typename Real>
PiecewiseChebFn<Real> adaptive_discretize(const std::function<Real(Real)>& f,
                                          Real a, Real b, int order, Real eps,
                                          int max_intervals) {
  if (!(a < b)) throw DomainError("empty discretization interval");
  struct Piece {
    Real lo, hi;
    std::vector<Real> values;
  };
  std::vector<Piece> done;
  std::vector<std::pair<Real, Real>> pending{{a, b}};
  const int first_tail = (order + 1) / 2 + 1;
  while (!pending.empty()) {
    if (static_cast<int>(pending.size() + done.size()) > max_intervals) {
      throw DiscretizationError("adaptive discretization exceeded " +
                                std::to_string(max_intervals) + " intervals");
    }
    auto [lo, hi] = pending.back();
    pending.pop_back();
    auto e = make_expansion(f, order, lo, hi);
    auto c = coeffs_from_values<Real>(e.values);
    Real head = 0;
    Real tail = 0;
    for (int k = 0; k <= order; ++k) {
      head = std::max(head, std::abs(c[k]));
      if (k >= first_tail) tail = std::max(tail, std::abs(c[k]));
    }
    if (!std::isfinite(head)) {
      throw DiscretizationError("function is not finite on interval");
    }
    bool accept = head <= std::numeric_limits<Real>::min() || tail <= eps * head;
    if (accept) {
      done.push_back({lo, hi, std::move(e.values)});
      continue;
    }
    Real mid = (lo + hi) / 2;
    if (!(lo < mid && mid < hi)) {
      throw DiscretizationError("interval collapsed during bisection");
    }
    pending.push_back({mid, hi});
    pending.push_back({lo, mid});
  }
  std::sort(done.begin(), done.end(),
            [](const Piece& p, const Piece& q) { return p.lo < q.lo; });
  std::vector<Real> breaks;
  std::vector<Real> values;
  breaks.reserve(done.size() + 1);
  for (auto& p : done) {
    breaks.push_back(p.lo);
    values.insert(values.end(), p.values.begin(), p.values.end());
  }
  breaks.push_back(b);
  return PiecewiseChebFn<Real>(order, std::move(breaks), std::move(values));
}

template <typename Real>
Real BivariateExpansion<Real>::eval(Real x, Real y) const {
  Real xhat = to_reference(x, rect.x0, rect.x1);
  Real yhat = to_reference(y, rect.y0, rect.y1);
  const int m = order + 1;
  std::vector<Real> rows(m);
  for (int i = 0; i < m; ++i) {
    rows[i] = chebyshev_sum<Real>(
        std::span<const Real>(coeffs).subspan(i * m, m), yhat);
  }
  return chebyshev_sum<Real>(rows, xhat);
}

template <typename Real>
BivariateExpansion<Real> bivariate_expand(const Rect<Real>& rect, int order,
                                          std::span<const Real> samples) {
  const int m = order + 1;
  if (samples.size() != static_cast<std::size_t>(m) * m) {
    throw DomainError("sample count does not match order");
  }
  if (!(rect.x0 < rect.x1) || !(rect.y0 < rect.y1)) {
    throw DomainError("degenerate rectangle");
  }
  const auto t = ChebBasis<Real>::get(order).transform();
  // tmp = F C^T, then B = C tmp.
  std::vector<Real> tmp(static_cast<std::size_t>(m) * m);
  for (int k = 0; k < m; ++k) {
    for (int j = 0; j < m; ++j) {
      Real s = 0;
      for (int l = 0; l < m; ++l) s += samples[k * m + l] * t[j * m + l];
      tmp[k * m + j] = s;
    }
  }
  BivariateExpansion<Real> out{rect, order,
                               std::vector<Real>(static_cast<std::size_t>(m) * m)};
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < m; ++j) {
      Real s = 0;
      for (int k = 0; k < m; ++k) s += t[i * m + k] * tmp[k * m + j];
      out.coeffs[i * m + j] = s;
    }
  }
  return out;
}

double CompressedExpansion::eval(double x, double y) const {
  double xhat = to_reference(x, rect.x0, rect.x1);
  double yhat = to_reference(y, rect.y0, rect.y1);
  // Clenshaw in x over row values, each row summed by Clenshaw in y.
  const double two_x = 2 * xhat;
  const double two_y = 2 * yhat;
  double bx1 = 0;
  double bx2 = 0;
  std::size_t end = coeffs.size();
  double row0 = 0;
  for (std::size_t i = row_lengths.size(); i-- > 0;) {
    const std::size_t len = row_lengths[i];
    const double* c = coeffs.data() + (end - len);
    end -= len;
    double r = 0;
    if (len > 0) {
      double by1 = 0;
      double by2 = 0;
      for (std::size_t j = len - 1; j >= 1; --j) {
        double tmp = c[j] + two_y * by1 - by2;
        by2 = by1;
        by1 = tmp;
      }
      r = c[0] + yhat * by1 - by2;
    }
    if (i == 0) {
      row0 = r;
    } else {
      double tmp = r + two_x * bx1 - bx2;
      bx2 = bx1;
      bx1 = tmp;
    }
  }
  return row0 + xhat * bx1 - bx2;
}

template <typename Real>
CompressedExpansion compress(const BivariateExpansion<Real>& expansion,
                             Real eps) {
  const int n = expansion.order;
  const int m = n + 1;
  auto significant = [&](int i, int j) {
    return !(std::abs(expansion.coeffs[i * m + j]) < eps);
  };
  int last_row = 0;
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < m; ++j) {
      if (significant(i, j)) last_row = i;
    }
  }
  CompressedExpansion out;
  out.rect = {static_cast<double>(expansion.rect.x0),
              static_cast<double>(expansion.rect.x1),
              static_cast<double>(expansion.rect.y0),
              static_cast<double>(expansion.rect.y1)};
  out.row_lengths.resize(last_row + 1);
  for (int i = 0; i <= last_row; ++i) {
    int len = 0;
    for (int j = 0; j < m; ++j) {
      if (significant(i, j)) len = j + 1;
    }
    out.row_lengths[i] = static_cast<std::uint32_t>(len);
    for (int j = 0; j < len; ++j) {
      Real w = edge_weight<Real>(i, n) * edge_weight<Real>(j, n);
      out.coeffs.push_back(static_cast<double>(w * expansion.coeffs[i * m + j]));
    }
  }
  return out;
}

#define BESSELEVAL_INSTANTIATE_CHEB(Real)                                      \
  template ChebGrid<Real> cheb_nodes<Real>(int, Real, Real);                   \
  template class ChebBasis<Real>;                                              \
  template std::vector<Real> coeffs_from_values<Real>(std::span<const Real>);  \
  template Real chebyshev_sum<Real>(std::span<const Real>, Real);              \
  template struct UnivariateExpansion<Real>;                                   \
  template UnivariateExpansion<Real> make_expansion<Real>(                     \
      const std::function<Real(Real)>&, int, Real, Real);                      \
  template Real barycentric_eval<Real>(const UnivariateExpansion<Real>&,       \
                                       Real);                                  \
  template Real barycentric_eval<Real>(std::span<const Real>,                  \
                                       std::span<const Real>, Real);           \
  template UnivariateExpansion<Real> spectral_integrate<Real>(                 \
      const UnivariateExpansion<Real>&);                                       \
  template std::size_t locate<Real>(std::span<const Real>, Real);              \
  template class PiecewiseChebFn<Real>;                                        \
  template PiecewiseChebFn<Real> adaptive_discretize<Real>(                    \
      const std::function<Real(Real)>&, Real, Real, int, Real, int);           \
  template struct BivariateExpansion<Real>;                                    \
  template BivariateExpansion<Real> bivariate_expand<Real>(                    \
      const Rect<Real>&, int, std::span<const Real>);                          \
  template CompressedExpansion compress<Real>(const BivariateExpansion<Real>&, \
                                              Real);

BESSELEVAL_INSTANTIATE_CHEB(double)
BESSELEVAL_INSTANTIATE_CHEB(long double)

#undef BESSELEVAL_INSTANTIATE_CHEB

}  // namespace besseleval
