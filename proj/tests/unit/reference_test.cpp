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

// The MPFR reference used by `verify` against values frozen from mpmath.

#include <gtest/gtest.h>

#include <cmath>

#include "besseleval/reference/reference.hpp"
#include "oracle_values.hpp"

namespace besseleval::reference {
namespace {

TEST(Reference, MatchesFrozenValues) {
  for (const auto& p : oracle::kPoints) {
    const auto r = bessel_jy(p.nu, p.t);
    const double lj = static_cast<double>(r.j.log_abs);
    const double ly = static_cast<double>(r.y.log_abs);
    const double tol_j = 2e-16 * std::max(1.0, std::abs(p.log_abs_j));
    const double tol_y = 2e-16 * std::max(1.0, std::abs(p.log_abs_y));
    EXPECT_NEAR(lj, p.log_abs_j, tol_j) << p.nu << " " << p.t << " " << method_name(r.method);
    EXPECT_NEAR(ly, p.log_abs_y, tol_y) << p.nu << " " << p.t << " " << method_name(r.method);
    EXPECT_EQ(r.j.sign, p.sign_j) << p.nu << " " << p.t;
    EXPECT_EQ(r.y.sign, p.sign_y) << p.nu << " " << p.t;
  }
}

TEST(Reference, J0AndY0AtOne) {
  EXPECT_DOUBLE_EQ(bessel_jy(0, 1).j.to_double(), oracle::kJ0At1);
  EXPECT_DOUBLE_EQ(bessel_jy(0, 1).y.to_double(), oracle::kY0At1);
}

TEST(Reference, PhaseDerivative) {
  EXPECT_DOUBLE_EQ(alphap(0.3, 10), oracle::kAlphap0_3At10);
}

// Where two regimes both converge they agree to far beyond binary64.
TEST(Reference, RegimesAgree) {
  struct Case {
    double nu, t;
  };
  int compared = 0;
  for (const auto c : {Case{3, 30}, Case{20, 35}, Case{50, 10}, Case{200, 100}}) {
    const auto s = series_jy(c.nu, c.t);
    ASSERT_TRUE(s.has_value()) << c.nu << " " << c.t;
    for (const auto& other : {debye_jy(c.nu, c.t), recurrence_jy(c.nu, c.t)}) {
      if (!other) continue;
      ++compared;
      EXPECT_LT(abs(other->j.log_abs - s->j.log_abs), Big("1e-25")) << c.nu << " " << c.t;
      EXPECT_LT(abs(other->y.log_abs - s->y.log_abs), Big("1e-25")) << c.nu << " " << c.t;
    }
  }
  EXPECT_GE(compared, 3);
}

TEST(Reference, RejectsBadArguments) {
  EXPECT_THROW(bessel_jy(-1, 1), std::domain_error);
  EXPECT_THROW(bessel_jy(1, 0), std::domain_error);
}

}  // namespace
}  // namespace besseleval::reference
