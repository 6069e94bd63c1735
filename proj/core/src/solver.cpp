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

#include "besseleval/solver.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <memory>
#include <mutex>

#include "besseleval/errors.hpp"

namespace besseleval {
namespace {

template <typename Real>
using Matrix = Eigen::Matrix<Real, Eigen::Dynamic, Eigen::Dynamic>;
template <typename Real>
using Vector = Eigen::Matrix<Real, Eigen::Dynamic, 1>;

// Reference integration matrix and its square for one order.
template <typename Real>
struct IntegrationOps {
  Matrix<Real> s;
  Matrix<Real> s2;

  static const IntegrationOps& get(int order) {
    static std::mutex mutex;
    static std::map<int, std::unique_ptr<IntegrationOps>> cache;
    std::lock_guard<std::mutex> lock(mutex);
    auto& slot = cache[order];
    if (!slot) {
      slot = std::make_unique<IntegrationOps>();
      const int m = order + 1;
      auto flat = ChebBasis<Real>::get(order).integration();
      slot->s.resize(m, m);
      for (int i = 0; i < m; ++i) {
        for (int j = 0; j < m; ++j) slot->s(i, j) = flat[i * m + j];
      }
      slot->s2 = slot->s * slot->s;
    }
    return *slot;
  }
};

template <typename Real>
bool all_finite(const std::vector<Real>& v) {
  return std::all_of(v.begin(), v.end(),
                     [](Real x) { return std::isfinite(x); });
}

// Reflected problem: s = a + b - t turns terminal data at b into initial
// data at a.
template <typename Real>
OdeProblem<Real> reflect(const OdeProblem<Real>& p) {
  OdeProblem<Real> r;
  const Real a = p.a;
  const Real b = p.b;
  r.rhs = [f = p.rhs, a, b](Real s, Real y, Real yp) {
    return f(a + b - s, y, -yp);
  };
  r.rhs_dy = [f = p.rhs_dy, a, b](Real s, Real y, Real yp) {
    return f(a + b - s, y, -yp);
  };
  r.rhs_dyp = [f = p.rhs_dyp, a, b](Real s, Real y, Real yp) {
    return -f(a + b - s, y, -yp);
  };
  r.a = a;
  r.b = b;
  r.kind = BoundaryKind::kInitial;
  r.y_bc = p.y_bc;
  r.yp_bc = -p.yp_bc;
  return r;
}

}  // namespace

template <>
double default_solver_tolerance<double>() {
  return 1e-13;
}

template <>
long double default_solver_tolerance<long double>() {
  return 5e-17L;
}

template <typename Real>
std::vector<Real> trapezoid_predict(const OdeProblem<Real>& problem, Real eta1,
                                    Real eta2, Real c1, Real c2, int order) {
  const auto grid = cheb_nodes(order, eta1, eta2);
  const auto& t = grid.nodes;
  std::vector<Real> ypp(order + 1);
  Real y = c1;
  Real p = c2;
  Real f = problem.rhs(t[0], y, p);
  ypp[0] = f;
  // Only a starting guess for Newton, so a loose inner tolerance suffices.
  const Real tiny = Real(1e-12);
  for (int k = 0; k < order; ++k) {
    const Real h = t[k + 1] - t[k];
    Real pn = p + h * f;
    Real yn = y;
    Real fn = f;
    for (int it = 0; it < 4; ++it) {
      yn = y + h / 2 * (p + pn);
      fn = problem.rhs(t[k + 1], yn, pn);
      Real g = pn - p - h / 2 * (f + fn);
      Real dg = 1 - h / 2 *
                        (problem.rhs_dy(t[k + 1], yn, pn) * h / 2 +
                         problem.rhs_dyp(t[k + 1], yn, pn));
      if (!std::isfinite(g) || !std::isfinite(dg) || dg == 0) break;
      Real step = g / dg;
      pn -= step;
      if (std::abs(step) <= tiny * std::abs(pn)) break;
    }
    yn = y + h / 2 * (p + pn);
    fn = problem.rhs(t[k + 1], yn, pn);
    y = yn;
    p = pn;
    f = fn;
    ypp[k + 1] = f;
  }
  if (!all_finite(ypp)) {
    std::fill(ypp.begin(), ypp.end(), problem.rhs(eta1, c1, c2));
  }
  return ypp;
}

template <typename Real>
NewtonResult<Real> newton_refine(const OdeProblem<Real>& problem, Real eta1,
                                 Real eta2, Real c1, Real c2,
                                 std::vector<Real> ypp, int max_newton) {
  const int n = static_cast<int>(ypp.size()) - 1;
  const int m = n + 1;
  const auto& ops = IntegrationOps<Real>::get(n);
  const auto grid = cheb_nodes(n, eta1, eta2);
  const Real h = (eta2 - eta1) / 2;
  const Matrix<Real> hs = h * ops.s;
  const Matrix<Real> h2s2 = (h * h) * ops.s2;

  Vector<Real> w = Eigen::Map<Vector<Real>>(ypp.data(), m);
  Vector<Real> wp = Vector<Real>::Constant(m, c2) + hs * w;
  Vector<Real> wy = Vector<Real>::Constant(m, c1) + hs * wp;

  NewtonResult<Real> out;
  Real previous = std::numeric_limits<Real>::infinity();
  // The linearised system only steers the iteration, so it is factored in
  // binary64; residuals and updates stay in Real.
  const Eigen::MatrixXd hs_d = hs.template cast<double>();
  const Eigen::MatrixXd h2s2_d = h2s2.template cast<double>();
  Eigen::MatrixXd jac(m, m);
  Vector<Real> residual(m);
  for (int iter = 1; iter <= max_newton; ++iter) {
    for (int l = 0; l < m; ++l) {
      const Real t = grid.nodes[l];
      residual(l) = problem.rhs(t, wy(l), wp(l)) - w(l);
      const double fy = static_cast<double>(problem.rhs_dy(t, wy(l), wp(l)));
      const double fyp = static_cast<double>(problem.rhs_dyp(t, wy(l), wp(l)));
      jac.row(l) = -fy * h2s2_d.row(l) - fyp * hs_d.row(l);
      jac(l, l) += 1;
    }
    if (!residual.allFinite() || !jac.allFinite()) break;
    Eigen::PartialPivLU<Eigen::MatrixXd> lu(jac);
    const Eigen::VectorXd sigma_d = lu.solve(residual.template cast<double>());
    const Vector<Real> sigma = sigma_d.template cast<Real>();
    Vector<Real> dp = hs * sigma;
    Vector<Real> dy = hs * dp;
    if (!dy.allFinite() || !dp.allFinite()) break;
    const Real norm = dy.cwiseAbs().maxCoeff();
    out.update_norms.push_back(norm);
    if (iter > 1 && !(norm < previous)) break;
    w += sigma;
    wp += dp;
    wy += dy;
    ++out.applied;
    previous = norm;
    if (norm == 0) break;
  }
  out.y.assign(wy.data(), wy.data() + m);
  out.yp.assign(wp.data(), wp.data() + m);
  out.ypp.assign(w.data(), w.data() + m);
  return out;
}

template <typename Real>
OdeSolution<Real> solve(const OdeProblem<Real>& problem,
                        const SolverOptions<Real>& options) {
  if (!(problem.a < problem.b)) {
    throw SolverError("empty solution interval", static_cast<double>(problem.a),
                      static_cast<double>(problem.b));
  }
  if (!problem.rhs || !problem.rhs_dy || !problem.rhs_dyp) {
    throw SolverError("missing right-hand side", static_cast<double>(problem.a),
                      static_cast<double>(problem.b));
  }
  if (problem.kind == BoundaryKind::kTerminal) {
    OdeSolution<Real> r = solve(reflect(problem), options);
    // Map the pieces back: breakpoints and node order both reverse.
    const Real a = problem.a;
    const Real b = problem.b;
    const int m = options.order + 1;
    const auto& rb = r.y.breakpoints();
    std::vector<Real> breaks(rb.size());
    for (std::size_t j = 0; j < rb.size(); ++j) {
      breaks[rb.size() - 1 - j] = a + b - rb[j];
    }
    breaks.front() = a;
    breaks.back() = b;
    const std::size_t pieces = r.y.pieces();
    std::vector<Real> y(pieces * m);
    std::vector<Real> yp(pieces * m);
    std::vector<Real> ypp(pieces * m);
    for (std::size_t j = 0; j < pieces; ++j) {
      const std::size_t dst = pieces - 1 - j;
      auto vy = r.y.piece_values(j);
      auto vp = r.yp.piece_values(j);
      auto vpp = r.ypp.piece_values(j);
      for (int l = 0; l < m; ++l) {
        y[dst * m + (m - 1 - l)] = vy[l];
        yp[dst * m + (m - 1 - l)] = -vp[l];
        ypp[dst * m + (m - 1 - l)] = vpp[l];
      }
    }
    return {PiecewiseChebFn<Real>(options.order, breaks, std::move(y)),
            PiecewiseChebFn<Real>(options.order, breaks, std::move(yp)),
            PiecewiseChebFn<Real>(options.order, std::move(breaks),
                                  std::move(ypp)),
            r.pieces_tried};
  }

  const int n = options.order;
  const int m = n + 1;
  const int first_tail = (n + 1) / 2 + 1;
  std::vector<Real> breaks{problem.a};
  std::vector<Real> ys, yps, ypps;
  std::vector<std::pair<Real, Real>> stack{{problem.a, problem.b}};
  Real c1 = problem.y_bc;
  Real c2 = problem.yp_bc;
  int tried = 0;
  while (!stack.empty()) {
    if (static_cast<int>(stack.size()) > options.max_stack) {
      throw SolverError("solver stack overflow",
                        static_cast<double>(stack.back().first),
                        static_cast<double>(stack.back().second));
    }
    auto [eta1, eta2] = stack.back();
    stack.pop_back();
    ++tried;
    const Real width_floor = 16 * std::numeric_limits<Real>::epsilon() *
                             std::max(std::abs(eta1), std::abs(eta2));
    if (!(eta2 - eta1 > width_floor)) {
      throw SolverError("solver interval collapsed", static_cast<double>(eta1),
                        static_cast<double>(eta2));
    }
    auto guess = trapezoid_predict(problem, eta1, eta2, c1, c2, n);
    auto res = newton_refine(problem, eta1, eta2, c1, c2, std::move(guess),
                             options.max_newton);
    bool ok = all_finite(res.y) && all_finite(res.yp) && all_finite(res.ypp);
    if (ok) {
      auto c = coeffs_from_values<Real>(res.y);
      Real head = 0;
      Real tail = 0;
      for (int k = 0; k <= n; ++k) {
        head = std::max(head, std::abs(c[k]));
        if (k >= first_tail) tail = std::max(tail, std::abs(c[k]));
      }
      ok = tail <= options.tolerance * head;
    }
    if (ok) {
      breaks.push_back(eta2);
      ys.insert(ys.end(), res.y.begin(), res.y.end());
      yps.insert(yps.end(), res.yp.begin(), res.yp.end());
      ypps.insert(ypps.end(), res.ypp.begin(), res.ypp.end());
      c1 = res.y[m - 1];
      c2 = res.yp[m - 1];
      continue;
    }
    const Real mid = (eta1 + eta2) / 2;
    stack.push_back({mid, eta2});
    stack.push_back({eta1, mid});
  }
  breaks.back() = problem.b;
  return {PiecewiseChebFn<Real>(n, breaks, std::move(ys)),
          PiecewiseChebFn<Real>(n, breaks, std::move(yps)),
          PiecewiseChebFn<Real>(n, std::move(breaks), std::move(ypps)), tried};
}

#define BESSELEVAL_INSTANTIATE_SOLVER(Real)                                   \
  template OdeSolution<Real> solve<Real>(const OdeProblem<Real>&,             \
                                         const SolverOptions<Real>&);         \
  template NewtonResult<Real> newton_refine<Real>(                            \
      const OdeProblem<Real>&, Real, Real, Real, Real, std::vector<Real>, int); \
  template std::vector<Real> trapezoid_predict<Real>(                         \
      const OdeProblem<Real>&, Real, Real, Real, Real, int);

BESSELEVAL_INSTANTIATE_SOLVER(double)
BESSELEVAL_INSTANTIATE_SOLVER(long double)

#undef BESSELEVAL_INSTANTIATE_SOLVER

}  // namespace besseleval
