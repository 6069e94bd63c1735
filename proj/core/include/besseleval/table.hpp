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

// Precomputed tables of the phase and of the logarithms of J and Y.
//
// Sections, each a grid of rectangles carrying a compressed bivariate
// Chebyshev expansion:
//
//   A1, C1   alpha / nu, alpha' / nu      x = 1/nu, y = (t - a) / (1000 nu - a)
//   B1       -1 + log(J sqrt t) / nu      x = 1/nu, y = (t - nu/1000) / (a - nu/1000)
//   B2        1 + log(-Y sqrt t) / nu     same coordinates as B1
//   A2, C2   alpha, alpha'                x = nu / 2, y = (t - 2) / 998
//
// with a = sqrt(nu^2 - 1/4). A1, C1, B1 and B2 cover 2 <= nu <= 1e9; A2 and
// C2 cover 0 <= nu <= 2 and 2 <= t <= 1000.

#ifndef BESSELEVAL_TABLE_HPP_
#define BESSELEVAL_TABLE_HPP_

#include <array>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

#include "besseleval/cheb.hpp"

namespace besseleval {

enum class SectionId : std::uint32_t { kA1 = 0, kC1, kA2, kC2, kB1, kB2 };

inline constexpr std::size_t kSectionCount = 6;

std::string section_name(SectionId id);

struct TableSection {
  SectionId id = SectionId::kA1;
  std::vector<double> x_breaks;
  std::vector<double> y_breaks;
  // Rectangle (i, j) spans [x_breaks[i], x_breaks[i+1]] x [y_breaks[j],
  // y_breaks[j+1]] and is stored at i * (y_breaks.size() - 1) + j.
  std::vector<CompressedExpansion> rects;

  std::size_t x_intervals() const { return x_breaks.size() - 1; }
  std::size_t y_intervals() const { return y_breaks.size() - 1; }
  const CompressedExpansion& rect(std::size_t i, std::size_t j) const {
    return rects[i * y_intervals() + j];
  }
  // Points outside the section are clamped to the nearest rectangle.
  double eval(double x, double y) const;
  // Number of stored coefficients.
  std::size_t coefficient_count() const;
};

struct TableMetadata {
  std::uint32_t order = 49;
  // Mantissa bits of the arithmetic the table was built in.
  std::uint32_t build_precision_bits = 64;
  double solver_tolerance = 0;
  double discretization_tolerance = 0;
  double compression_tolerance = 0;
};

struct BesselTable {
  TableMetadata meta;
  std::array<TableSection, kSectionCount> sections;

  const TableSection& section(SectionId id) const {
    return sections[static_cast<std::size_t>(id)];
  }
  TableSection& section(SectionId id) {
    return sections[static_cast<std::size_t>(id)];
  }
  double nu_min_large() const;  // smallest order covered by A1 etc.
  double nu_max() const;
};

// Breakpoints in x = 1/nu: 1e-9, 1e-8, ..., 1e-2, 1/50, 1/10, 1/2.
std::vector<double> default_x_breaks();

struct BuildOptions {
  std::vector<double> x_breaks = default_x_breaks();
  int order = 49;
  double solver_tolerance = 5e-17;
  double discretization_tolerance = 1e-16;
  // Coefficients below this times the largest in their rectangle are
  // dropped.
  double compression_tolerance = 1e-17;
  // A2 and C2 are split in nu until the x-direction tail of every rectangle
  // is below this, relative to its largest coefficient.
  double small_order_tail = 1e-15;
  int small_order_max_intervals = 16;
  unsigned threads = 0;  // 0: hardware concurrency
  std::function<void(const std::string&)> progress;
};

struct BuildStats {
  std::size_t orders = 0;  // distinct nu solved for in stage one
  std::size_t oscillatory_intervals = 0;
  std::size_t nonoscillatory_intervals = 0;
  std::size_t small_order_nu_intervals = 0;
  std::size_t small_order_t_intervals = 0;
  // Largest x-direction tail (coefficients of degree > n/2 in 1/nu) over
  // the rectangles of A1/C1 and of B1/B2, relative to each rectangle.
  double oscillatory_x_tail = 0;
  double nonoscillatory_x_tail = 0;
  double seconds = 0;
};

BesselTable build_table(const BuildOptions& options = {},
                        BuildStats* stats = nullptr);

// Union of partitions of a common interval; breakpoints closer than tol
// (relative to the interval length) are merged.
std::vector<double> unify_partitions(
    const std::vector<std::vector<double>>& partitions, double tol = 1e-12);

// Binary format, little-endian:
//   "BESLTBL1", u32 version, metadata, six sections, u32 CRC-32 of all
//   preceding bytes.
inline constexpr std::uint32_t kTableFormatVersion = 1;

void write_table(const BesselTable& table, std::ostream& out);
// Throws FormatError on any malformed, truncated or corrupted input.
BesselTable read_table(std::istream& in);

void save_table(const BesselTable& table, const std::string& path);
BesselTable load_table(const std::string& path);

}  // namespace besseleval

#endif  // BESSELEVAL_TABLE_HPP_
