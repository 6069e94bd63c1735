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

#ifndef BESSELEVAL_ERRORS_HPP_
#define BESSELEVAL_ERRORS_HPP_

#include <stdexcept>
#include <string>

namespace besseleval {

// Argument outside the domain of an operation (bad interval, point outside a
// rectangle, order outside the table range, ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Adaptive discretization could not resolve a function within the interval
// budget.
class DiscretizationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// The ODE solver gave up. `lo` and `hi` bound the interval it was working on.
class SolverError : public std::runtime_error {
 public:
  SolverError(const std::string& what, double lo, double hi)
      : std::runtime_error(what), lo_(lo), hi_(hi) {}
  double lo() const { return lo_; }
  double hi() const { return hi_; }

 private:
  double lo_;
  double hi_;
};

// Malformed, truncated or corrupted table file.
class FormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace besseleval

#endif  // BESSELEVAL_ERRORS_HPP_
