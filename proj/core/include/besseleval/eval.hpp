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

// J_nu(t), Y_nu(t) and their phase or logarithms from a precomputed table.
//
//   branch  orders      arguments                 source
//   1       nu >= 2     a <= t <= 1000 nu         A1, C1
//   2       nu >= 2     nu/1000 <= t < a          B1, B2
//   3       nu >= 2     t < nu/1000               Debye (power series below 10)
//   4       nu < 2      2 <= t <= 1000            A2, C2
//   5       nu < 2      t < 2, t >= a             power series
//   6       nu < 2      t < a < 2                 power series, logarithms
//   7       nu >= 2     t > 1000 nu               large-argument expansion
//           nu < 2      t > 1000
//
// with a = sqrt(nu^2 - 1/4) (a = 0 for nu <= 1/2). Branches 1, 4, 5 and 7
// are oscillatory and report alpha and alpha'; 2, 3 and 6 report log J and
// log(-Y).

#ifndef BESSELEVAL_EVAL_HPP_
#define BESSELEVAL_EVAL_HPP_

#include <optional>
#include <string>

#include "besseleval/expansions.hpp"
#include "besseleval/table.hpp"

namespace besseleval {

enum class Region { kOscillatory, kNonoscillatory };

struct EvalResult {
  Region region = Region::kOscillatory;
  int branch = 0;
  double j = 0;
  double y = 0;
  // Nonoscillatory region only. When these fall outside +-700, j is 0 and y
  // is -inf.
  std::optional<double> log_j;
  std::optional<double> log_neg_y;
  // Oscillatory region only.
  std::optional<double> alpha;
  std::optional<double> alphap;
};

class Evaluator {
 public:
  explicit Evaluator(BesselTable table);
  static Evaluator from_file(const std::string& path);

  Evaluator(const Evaluator& other);
  Evaluator(Evaluator&& other) noexcept;
  Evaluator& operator=(Evaluator other) noexcept;

  // Throws DomainError for nu outside [0, nu_max()], t <= 0, or non-finite
  // arguments. Does not allocate.
  EvalResult eval(double nu, double t) const;

  const BesselTable& table() const { return table_; }
  double nu_max() const { return nu_max_; }

 private:
  EvalResult oscillatory_large(double nu, double t) const;
  EvalResult nonoscillatory_large(double nu, double t) const;
  EvalResult deep(double nu, double t) const;
  EvalResult small_table(double nu, double t) const;
  EvalResult small_series(double nu, double t) const;
  EvalResult asymptotic(double nu, double t) const;
  void bind_sections();

  BesselTable table_;
  // Point into table_; rebound on copy and move.
  const TableSection* a1_ = nullptr;
  const TableSection* c1_ = nullptr;
  const TableSection* a2_ = nullptr;
  const TableSection* c2_ = nullptr;
  const TableSection* b1_ = nullptr;
  const TableSection* b2_ = nullptr;
  double nu_max_;
  DebyeExpansion<double> debye_;
};

// Phase and its derivative for large t by the classical expansion of the
// modulus-phase pair, four correction terms. Accurate to binary64 for
// t >= 1000 max(nu, 2).
struct PhasePair {
  double alpha;
  double alphap;
};
PhasePair large_argument_phase(double nu, double t);

}  // namespace besseleval

#endif  // BESSELEVAL_EVAL_HPP_
