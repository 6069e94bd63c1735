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

// Chebyshev machinery on the extrema grid rho_j = -cos(pi j / n).
//
// Coefficients follow the "double prime" convention: a polynomial of degree n
// is written sum'' b_k T_k, where the first and last terms carry weight 1/2.
// This is what the discrete cosine transform of node values yields directly.
//
// Everything is templated on the working precision. The table builder runs in
// long double, the runtime in double; both are instantiated in cheb.cpp.

#ifndef BESSELEVAL_CHEB_HPP_
#define BESSELEVAL_CHEB_HPP_

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

namespace besseleval {

template <typename Real>
struct ChebGrid {
  int order = 0;
  Real a{};
  Real b{};
  std::vector<Real> nodes;  // order + 1 points, ascending, endpoints exact
};

// Chebyshev extrema grid of the given order on [a, b]. Throws DomainError if
// a >= b or order < 1.
template <typename Real>
ChebGrid<Real> cheb_nodes(int order, Real a, Real b);

// Precomputed per-order data. Instances are created on first use and never
// modified afterwards, so references may be shared between threads.
template <typename Real>
class ChebBasis {
 public:
  static const ChebBasis& get(int order);

  int order() const { return order_; }
  // Nodes on [-1, 1].
  std::span<const Real> nodes() const { return nodes_; }
  // Row-major (n+1)x(n+1) matrix mapping node values to sum'' coefficients.
  std::span<const Real> transform() const { return transform_; }
  // Row-major (n+1)x(n+1) matrix mapping node values of f to node values of
  // the antiderivative of the interpolant vanishing at -1.
  std::span<const Real> integration() const { return integration_; }
  // Barycentric weights of the second-kind formula.
  std::span<const Real> weights() const { return weights_; }

  explicit ChebBasis(int order);

 private:
  int order_;
  std::vector<Real> nodes_;
  std::vector<Real> transform_;
  std::vector<Real> integration_;
  std::vector<Real> weights_;
};

// Returns the sum'' coefficients of the interpolant through `values` given at
// the extrema grid of order values.size() - 1.
template <typename Real>
std::vector<Real> coeffs_from_values(std::span<const Real> values);

// Evaluates sum'' b_k T_k(x) for x in [-1, 1] by Clenshaw recurrence.
template <typename Real>
Real chebyshev_sum(std::span<const Real> b, Real x);

// Polynomial of degree `order` on [a, b] stored through its node values.
template <typename Real>
struct UnivariateExpansion {
  ChebGrid<Real> grid;
  std::vector<Real> values;

  Real eval(Real x) const;
  std::vector<Real> coeffs() const;
};

template <typename Real>
UnivariateExpansion<Real> make_expansion(const std::function<Real(Real)>& f,
                                         int order, Real a, Real b);

// Barycentric evaluation. Throws DomainError outside [a, b].
template <typename Real>
Real barycentric_eval(const UnivariateExpansion<Real>& fn, Real x);

// Lower-level barycentric evaluation on an arbitrary extrema grid.
template <typename Real>
Real barycentric_eval(std::span<const Real> nodes,
                      std::span<const Real> values, Real x);

// Antiderivative of the interpolant, vanishing at a, sampled on the same
// grid.
template <typename Real>
UnivariateExpansion<Real> spectral_integrate(
    const UnivariateExpansion<Real>& fn);

// Finds j with breakpoints[j] <= x < breakpoints[j+1]; the last interval is
// closed on the right. Throws DomainError outside the breakpoint range.
template <typename Real>
std::size_t locate(std::span<const Real> breakpoints, Real x);

// Piecewise polynomial of a fixed order over a partition of [a, b].
template <typename Real>
class PiecewiseChebFn {
 public:
  PiecewiseChebFn() = default;
  PiecewiseChebFn(int order, std::vector<Real> breakpoints,
                  std::vector<Real> values);

  int order() const { return order_; }
  std::size_t pieces() const {
    return breakpoints_.empty() ? 0 : breakpoints_.size() - 1;
  }
  const std::vector<Real>& breakpoints() const { return breakpoints_; }
  Real lo() const { return breakpoints_.front(); }
  Real hi() const { return breakpoints_.back(); }

  // Node values of piece j.
  std::span<const Real> piece_values(std::size_t j) const;
  UnivariateExpansion<Real> piece(std::size_t j) const;

  Real eval(Real x) const;

 private:
  int order_ = 0;
  const ChebBasis<Real>* basis_ = nullptr;
  std::vector<Real> breakpoints_;
  std::vector<Real> values_;  // pieces() * (order + 1)
};

// Splits [a, b] by repeated bisection until every piece passes the tail
// test max |b_k|, k > n/2, <= eps * max |b_k|. Throws DiscretizationError if
// more than max_intervals pieces would be pending.
template <typename Real>
PiecewiseChebFn<Real> adaptive_discretize(const std::function<Real(Real)>& f,
                                          Real a, Real b, int order, Real eps,
                                          int max_intervals = 300);

template <typename Real>
struct Rect {
  Real x0{}, x1{}, y0{}, y1{};
};

// Full tensor product expansion sum'' sum'' b_ij T_i(x) T_j(y).
template <typename Real>
struct BivariateExpansion {
  Rect<Real> rect;
  int order = 0;
  std::vector<Real> coeffs;  // (order+1)^2, index i * (order+1) + j

  Real eval(Real x, Real y) const;
};

// Expands from samples[k * (n+1) + l] = f(x_k, y_l) on the extrema grid of
// the rectangle.
template <typename Real>
BivariateExpansion<Real> bivariate_expand(const Rect<Real>& rect, int order,
                                          std::span<const Real> samples);

// Truncated expansion in binary64. Row i keeps row_lengths[i] leading
// coefficients; the halving of edge terms is already folded in.
struct CompressedExpansion {
  Rect<double> rect;
  std::vector<std::uint32_t> row_lengths;  // M + 1 entries, may be 0
  std::vector<double> coeffs;              // concatenated rows

  int max_x_degree() const { return static_cast<int>(row_lengths.size()) - 1; }
  double eval(double x, double y) const;
};

// Drops coefficients with |b_ij| < eps. Always keeps at least one row.
template <typename Real>
CompressedExpansion compress(const BivariateExpansion<Real>& expansion,
                             Real eps);

}  // namespace besseleval

#endif  // BESSELEVAL_CHEB_HPP_
