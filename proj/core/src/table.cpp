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

#include "besseleval/table.hpp"

#include <zlib.h>

#include <algorithm>
#include <atomic>
#include <bit>
#include <chrono>
#include <cmath>
#include <cstring>
#include <exception>
#include <fstream>
#include <iterator>
#include <limits>
#include <map>
#include <mutex>
#include <sstream>
#include <thread>

#include "besseleval/errors.hpp"
#include "besseleval/phase.hpp"

namespace besseleval {
namespace {

using Wide = long double;

// Runs fn(0), ..., fn(n-1) on a pool of threads. The first exception thrown
// is rethrown after all workers stop.
void parallel_for(std::size_t n, unsigned threads,
                  const std::function<void(std::size_t)>& fn) {
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, n));
  std::atomic<std::size_t> next{0};
  std::atomic<bool> failed{false};
  std::exception_ptr error;
  std::mutex error_mutex;
  auto worker = [&] {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= n || failed.load()) return;
      try {
        fn(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!error) error = std::current_exception();
        failed.store(true);
      }
    }
  };
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (unsigned k = 0; k < threads; ++k) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  if (error) std::rethrow_exception(error);
}

// Samples of the quantities stored in the table, given one phase solution.
struct PhaseSampler {
  const PhaseSolution<Wide>* phase;

  Wide nu() const { return phase->nu; }

  // Oscillatory coordinates: t = a + (1000 nu - a) y.
  Wide osc_x(Wide y) const {
    const Wide length = 1000 * nu() - phase->a;
    return std::clamp(length * y, Wide(0), phase->b - phase->origin);
  }
  Wide alpha(Wide y) const { return phase->alpha_shifted(osc_x(y)); }
  Wide alphap(Wide y) const { return phase->alphap_shifted(osc_x(y)); }

  // Nonoscillatory coordinates: t = nu/1000 + (a - nu/1000) y.
  Wide nonosc_t(Wide y, const PiecewiseChebFn<Wide>& fn) const {
    const Wide c = nu() / 1000;
    return std::clamp(c + (phase->a - c) * y, fn.lo(), fn.hi());
  }
  Wide log_j(Wide y) const {
    const auto& fn = phase->log_j->value;
    return fn.eval(nonosc_t(y, fn));
  }
  Wide log_neg_y(Wide y) const {
    const auto& fn = phase->log_neg_y->value;
    return fn.eval(nonosc_t(y, fn));
  }

  // Small-order coordinates: t = 2 + 998 y.
  Wide small_x(Wide y) const {
    return std::clamp(998 * y, Wide(0), phase->b - phase->origin);
  }
};

std::vector<double> to_double(const std::vector<Wide>& v) {
  std::vector<double> out(v.size());
  std::transform(v.begin(), v.end(), out.begin(),
                 [](Wide w) { return static_cast<double>(w); });
  return out;
}

std::vector<double> breakpoints_of(
    const std::function<Wide(Wide)>& f, int order, double eps) {
  return to_double(
      adaptive_discretize<Wide>(f, 0, 1, order, static_cast<Wide>(eps))
          .breakpoints());
}

Wide max_abs(const std::vector<Wide>& v) {
  Wide m = 0;
  for (Wide c : v) m = std::max(m, std::abs(c));
  return m;
}

// Largest |b_ij| with i > n/2, relative to the largest coefficient.
Wide x_tail(const BivariateExpansion<Wide>& e) {
  const int m = e.order + 1;
  Wide tail = 0;
  for (int i = e.order / 2 + 1; i < m; ++i) {
    for (int j = 0; j < m; ++j) tail = std::max(tail, std::abs(e.coeffs[i * m + j]));
  }
  const Wide scale = max_abs(e.coeffs);
  return scale > 0 ? tail / scale : 0;
}

CompressedExpansion compress_relative(const BivariateExpansion<Wide>& e,
                                      double rel) {
  return compress<Wide>(e, static_cast<Wide>(rel) * max_abs(e.coeffs));
}

// Node k of interval i of a partition, as a flat index into the distinct
// nodes of the whole partition (shared endpoints counted once).
std::size_t node_index(std::size_t i, int k, int order) {
  return i * static_cast<std::size_t>(order) + static_cast<std::size_t>(k);
}

struct SectionPair {
  TableSection first;
  TableSection second;
};

// Fills two sections sharing a grid from per-node sample functions.
// sample(node, y) returns the pair of values at that node.
SectionPair expand_sections(
    SectionId first_id, SectionId second_id, const std::vector<double>& x_breaks,
    const std::vector<double>& y_breaks, int order, double compression,
    unsigned threads,
    const std::function<std::pair<Wide, Wide>(std::size_t, Wide)>& sample,
    std::vector<Wide>* tails_out) {
  const std::size_t nx = x_breaks.size() - 1;
  const std::size_t ny = y_breaks.size() - 1;
  const int m = order + 1;
  SectionPair out;
  out.first.id = first_id;
  out.second.id = second_id;
  for (TableSection* s : {&out.first, &out.second}) {
    s->x_breaks = x_breaks;
    s->y_breaks = y_breaks;
    s->rects.resize(nx * ny);
  }
  std::vector<Wide> tails(nx * ny, 0);
  parallel_for(nx * ny, threads, [&](std::size_t r) {
    const std::size_t i = r / ny;
    const std::size_t j = r % ny;
    const Rect<Wide> rect{x_breaks[i], x_breaks[i + 1], y_breaks[j],
                          y_breaks[j + 1]};
    const auto ys = cheb_nodes<Wide>(order, rect.y0, rect.y1).nodes;
    std::vector<Wide> s1(m * m);
    std::vector<Wide> s2(m * m);
    for (int k = 0; k < m; ++k) {
      const std::size_t node = node_index(i, k, order);
      for (int l = 0; l < m; ++l) {
        const auto [v1, v2] = sample(node, ys[l]);
        s1[k * m + l] = v1;
        s2[k * m + l] = v2;
      }
    }
    const auto e1 = bivariate_expand<Wide>(rect, order, s1);
    const auto e2 = bivariate_expand<Wide>(rect, order, s2);
    tails[r] = std::max(x_tail(e1), x_tail(e2));
    out.first.rects[r] = compress_relative(e1, compression);
    out.second.rects[r] = compress_relative(e2, compression);
  });
  if (tails_out) *tails_out = std::move(tails);
  return out;
}

// Distinct nodes of the extrema grids on consecutive intervals.
std::vector<Wide> partition_nodes(const std::vector<double>& breaks, int order) {
  std::vector<Wide> nodes;
  for (std::size_t i = 0; i + 1 < breaks.size(); ++i) {
    const auto grid = cheb_nodes<Wide>(order, breaks[i], breaks[i + 1]).nodes;
    const int first = i == 0 ? 0 : 1;
    nodes.insert(nodes.end(), grid.begin() + first, grid.end());
  }
  return nodes;
}

class Reporter {
 public:
  explicit Reporter(const BuildOptions& options) : options_(options) {}
  void operator()(const std::string& message) const {
    if (options_.progress) options_.progress(message);
  }

 private:
  const BuildOptions& options_;
};

}  // namespace

std::string section_name(SectionId id) {
  switch (id) {
    case SectionId::kA1: return "A1";
    case SectionId::kC1: return "C1";
    case SectionId::kA2: return "A2";
    case SectionId::kC2: return "C2";
    case SectionId::kB1: return "B1";
    case SectionId::kB2: return "B2";
  }
  return "?";
}

double TableSection::eval(double x, double y) const {
  auto find = [](const std::vector<double>& b, double v) -> std::size_t {
    const auto it = std::upper_bound(b.begin() + 1, b.end() - 1, v);
    return static_cast<std::size_t>(it - b.begin()) - 1;
  };
  return rect(find(x_breaks, x), find(y_breaks, y)).eval(x, y);
}

std::size_t TableSection::coefficient_count() const {
  std::size_t n = 0;
  for (const auto& r : rects) n += r.coeffs.size();
  return n;
}

double BesselTable::nu_min_large() const {
  return 1 / section(SectionId::kA1).x_breaks.back();
}

double BesselTable::nu_max() const {
  return 1 / section(SectionId::kA1).x_breaks.front();
}

std::vector<double> default_x_breaks() {
  std::vector<double> b;
  for (int e = -9; e <= -2; ++e) b.push_back(std::pow(10.0, e));
  b.push_back(1.0 / 50);
  b.push_back(1.0 / 10);
  b.push_back(1.0 / 2);
  return b;
}

std::vector<double> unify_partitions(
    const std::vector<std::vector<double>>& partitions, double tol) {
  std::vector<double> all;
  for (const auto& p : partitions) all.insert(all.end(), p.begin(), p.end());
  if (all.empty()) return all;
  std::sort(all.begin(), all.end());
  const double lo = all.front();
  const double hi = all.back();
  const double gap = tol * (hi - lo);
  std::vector<double> out{lo};
  for (double v : all) {
    if (v - out.back() > gap) out.push_back(v);
  }
  // Keep the right end exact.
  if (out.size() > 1 && hi - out[out.size() - 2] <= gap) out.pop_back();
  out.back() = hi;
  return out;
}

BesselTable build_table(const BuildOptions& options, BuildStats* stats) {
  const auto start = std::chrono::steady_clock::now();
  const Reporter report(options);
  const int order = options.order;
  const auto& xb = options.x_breaks;
  if (xb.size() < 2 || !std::is_sorted(xb.begin(), xb.end()) || !(xb.front() > 0) ||
      !(xb.back() <= 0.5)) {
    throw DomainError("x breakpoints must increase within (0, 1/2]");
  }

  PhaseOptions<Wide> phase_options;
  phase_options.solver.tolerance = options.solver_tolerance;

  BesselTable table;
  table.meta.order = static_cast<std::uint32_t>(order);
  table.meta.build_precision_bits = std::numeric_limits<Wide>::digits;
  table.meta.solver_tolerance = options.solver_tolerance;
  table.meta.discretization_tolerance = options.discretization_tolerance;
  table.meta.compression_tolerance = options.compression_tolerance;

  // Stage one: phases for every order on the x grid.
  const auto x_nodes = partition_nodes(xb, order);
  std::vector<PhaseSolution<Wide>> phases(x_nodes.size());
  report("solving " + std::to_string(x_nodes.size()) + " orders");
  parallel_for(x_nodes.size(), options.threads, [&](std::size_t k) {
    const Wide nu = 1 / x_nodes[k];
    try {
      phases[k] = compute_phase<Wide>(nu, phase_options);
    } catch (const std::exception& e) {
      std::ostringstream msg;
      msg.precision(17);
      msg << "phase solve failed at nu = " << static_cast<double>(nu) << ": "
          << e.what();
      throw SolverError(msg.str(), static_cast<double>(nu),
                        static_cast<double>(nu));
    }
  });

  // Stage two: unified partitions in y.
  std::vector<std::vector<double>> osc(phases.size());
  std::vector<std::vector<double>> nonosc(2 * phases.size());
  parallel_for(phases.size(), options.threads, [&](std::size_t k) {
    const PhaseSampler s{&phases[k]};
    const double eps = options.discretization_tolerance;
    osc[k] = breakpoints_of([&](Wide y) { return s.alpha(y); }, order, eps);
    nonosc[2 * k] = breakpoints_of([&](Wide y) { return s.log_j(y); }, order, eps);
    nonosc[2 * k + 1] =
        breakpoints_of([&](Wide y) { return s.log_neg_y(y); }, order, eps);
  });
  const auto osc_breaks = unify_partitions(osc);
  const auto nonosc_breaks = unify_partitions(nonosc);
  report("unified partitions: " + std::to_string(osc_breaks.size() - 1) +
         " oscillatory, " + std::to_string(nonosc_breaks.size() - 1) +
         " nonoscillatory intervals");

  // Stage three: expansions.
  std::vector<Wide> a_tails;
  std::vector<Wide> b_tails;
  auto a = expand_sections(
      SectionId::kA1, SectionId::kC1, xb, osc_breaks, order,
      options.compression_tolerance, options.threads,
      [&](std::size_t node, Wide y) {
        const PhaseSampler s{&phases[node]};
        return std::pair{s.alpha(y) / s.nu(), s.alphap(y) / s.nu()};
      },
      &a_tails);
  auto b = expand_sections(
      SectionId::kB1, SectionId::kB2, xb, nonosc_breaks, order,
      options.compression_tolerance, options.threads,
      [&](std::size_t node, Wide y) {
        const PhaseSampler s{&phases[node]};
        return std::pair{s.log_j(y) / s.nu(), s.log_neg_y(y) / s.nu()};
      },
      &b_tails);
  phases.clear();
  phases.shrink_to_fit();

  // Small orders: split in nu until the expansions resolve the nu
  // dependence, re-unifying the t partition after each split.
  std::vector<double> small_x{0.0, 1.0};
  std::map<double, PhaseSolution<Wide>> small_phases;
  SectionPair small;
  std::vector<double> small_y;
  for (;;) {
    const auto nodes = partition_nodes(small_x, order);
    std::vector<Wide> missing;
    for (Wide x : nodes) {
      if (!small_phases.count(static_cast<double>(x))) missing.push_back(x);
    }
    std::vector<PhaseSolution<Wide>> solved(missing.size());
    parallel_for(missing.size(), options.threads, [&](std::size_t k) {
      solved[k] = compute_phase_on<Wide>(2 * missing[k], 2, 1000, phase_options);
    });
    for (std::size_t k = 0; k < missing.size(); ++k) {
      small_phases.emplace(static_cast<double>(missing[k]), std::move(solved[k]));
    }
    std::vector<const PhaseSolution<Wide>*> node_phases;
    for (Wide x : nodes) node_phases.push_back(&small_phases.at(static_cast<double>(x)));

    std::vector<std::vector<double>> parts(node_phases.size());
    parallel_for(node_phases.size(), options.threads, [&](std::size_t k) {
      const PhaseSampler s{node_phases[k]};
      parts[k] = breakpoints_of(
          [&](Wide y) { return s.phase->alpha_shifted(s.small_x(y)); }, order,
          options.discretization_tolerance);
    });
    small_y = unify_partitions(parts);

    const std::size_t ny = small_y.size() - 1;
    std::vector<Wide> tails;
    small = expand_sections(
        SectionId::kA2, SectionId::kC2, small_x, small_y, order,
        options.compression_tolerance, options.threads,
        [&](std::size_t node, Wide y) {
          const PhaseSampler s{node_phases[node]};
          const Wide x = s.small_x(y);
          return std::pair{s.phase->alpha_shifted(x), s.phase->alphap_shifted(x)};
        },
        &tails);
    std::vector<double> refined{small_x.front()};
    bool split = false;
    for (std::size_t i = 0; i + 1 < small_x.size(); ++i) {
      bool bad = false;
      for (std::size_t j = 0; j < ny; ++j) {
        bad = bad || tails[i * ny + j] > options.small_order_tail;
      }
      if (bad && small_x.size() - 1 < static_cast<std::size_t>(
                                          options.small_order_max_intervals)) {
        refined.push_back((small_x[i] + small_x[i + 1]) / 2);
        split = true;
      }
      refined.push_back(small_x[i + 1]);
    }
    if (!split) break;
    small_x = std::move(refined);
    report("splitting small orders into " + std::to_string(small_x.size() - 1) +
           " intervals");
  }

  table.section(SectionId::kA1) = std::move(a.first);
  table.section(SectionId::kC1) = std::move(a.second);
  table.section(SectionId::kB1) = std::move(b.first);
  table.section(SectionId::kB2) = std::move(b.second);
  table.section(SectionId::kA2) = std::move(small.first);
  table.section(SectionId::kC2) = std::move(small.second);

  if (stats) {
    stats->orders = x_nodes.size();
    stats->oscillatory_intervals = osc_breaks.size() - 1;
    stats->nonoscillatory_intervals = nonosc_breaks.size() - 1;
    stats->small_order_nu_intervals = small_x.size() - 1;
    stats->small_order_t_intervals = small_y.size() - 1;
    stats->oscillatory_x_tail =
        static_cast<double>(*std::max_element(a_tails.begin(), a_tails.end()));
    stats->nonoscillatory_x_tail =
        static_cast<double>(*std::max_element(b_tails.begin(), b_tails.end()));
    stats->seconds = std::chrono::duration<double>(
                         std::chrono::steady_clock::now() - start)
                         .count();
  }
  return table;
}

// Serialization.

namespace {

constexpr char kMagic[8] = {'B', 'E', 'S', 'L', 'T', 'B', 'L', '1'};

class Writer {
 public:
  void bytes(const void* p, std::size_t n) {
    buffer_.append(static_cast<const char*>(p), n);
  }
  void u32(std::uint32_t v) {
    unsigned char b[4];
    for (int k = 0; k < 4; ++k) b[k] = static_cast<unsigned char>(v >> (8 * k));
    bytes(b, 4);
  }
  void f64(double v) {
    const auto bits = std::bit_cast<std::uint64_t>(v);
    unsigned char b[8];
    for (int k = 0; k < 8; ++k) b[k] = static_cast<unsigned char>(bits >> (8 * k));
    bytes(b, 8);
  }
  void f64s(const std::vector<double>& v) {
    for (double d : v) f64(d);
  }
  const std::string& buffer() const { return buffer_; }

 private:
  std::string buffer_;
};

class Reader {
 public:
  Reader(const std::string& data, std::size_t end) : data_(data), end_(end) {}

  void need(std::size_t n) const {
    if (n > end_ - pos_) throw FormatError("table file is truncated");
  }
  std::uint32_t u32() {
    need(4);
    std::uint32_t v = 0;
    for (int k = 0; k < 4; ++k) {
      v |= static_cast<std::uint32_t>(static_cast<unsigned char>(data_[pos_ + k]))
           << (8 * k);
    }
    pos_ += 4;
    return v;
  }
  double f64() {
    need(8);
    std::uint64_t v = 0;
    for (int k = 0; k < 8; ++k) {
      v |= static_cast<std::uint64_t>(static_cast<unsigned char>(data_[pos_ + k]))
           << (8 * k);
    }
    pos_ += 8;
    return std::bit_cast<double>(v);
  }
  // Count of elements of the given size that must still fit.
  std::uint32_t count(std::size_t element_size) {
    const std::uint32_t n = u32();
    need(static_cast<std::size_t>(n) * element_size);
    return n;
  }
  std::vector<double> f64s(std::size_t n) {
    std::vector<double> v(n);
    for (auto& d : v) d = f64();
    return v;
  }
  std::size_t pos() const { return pos_; }
  void skip(std::size_t n) {
    need(n);
    pos_ += n;
  }

 private:
  const std::string& data_;
  std::size_t end_;
  std::size_t pos_ = 0;
};

std::uint32_t crc_of(const char* p, std::size_t n) {
  uLong crc = crc32(0L, Z_NULL, 0);
  // zlib takes uInt lengths.
  while (n > 0) {
    const uInt chunk = static_cast<uInt>(std::min<std::size_t>(n, 1u << 30));
    crc = crc32(crc, reinterpret_cast<const Bytef*>(p), chunk);
    p += chunk;
    n -= chunk;
  }
  return static_cast<std::uint32_t>(crc);
}

void check_breaks(const std::vector<double>& b) {
  if (b.size() < 2) throw FormatError("section has fewer than two breakpoints");
  for (std::size_t i = 0; i + 1 < b.size(); ++i) {
    if (!(b[i] < b[i + 1])) throw FormatError("breakpoints are not increasing");
  }
}

}  // namespace

void write_table(const BesselTable& table, std::ostream& out) {
  Writer w;
  w.bytes(kMagic, sizeof kMagic);
  w.u32(kTableFormatVersion);
  w.u32(table.meta.order);
  w.u32(table.meta.build_precision_bits);
  w.f64(table.meta.solver_tolerance);
  w.f64(table.meta.discretization_tolerance);
  w.f64(table.meta.compression_tolerance);
  for (const auto& s : table.sections) {
    w.u32(static_cast<std::uint32_t>(s.id));
    w.u32(static_cast<std::uint32_t>(s.x_breaks.size()));
    w.f64s(s.x_breaks);
    w.u32(static_cast<std::uint32_t>(s.y_breaks.size()));
    w.f64s(s.y_breaks);
    w.u32(static_cast<std::uint32_t>(s.rects.size()));
    for (const auto& r : s.rects) {
      w.u32(static_cast<std::uint32_t>(r.max_x_degree()));
      for (auto len : r.row_lengths) w.u32(len);
      w.f64s(r.coeffs);
    }
  }
  const std::uint32_t crc = crc_of(w.buffer().data(), w.buffer().size());
  w.u32(crc);
  out.write(w.buffer().data(), static_cast<std::streamsize>(w.buffer().size()));
  if (!out) throw FormatError("failed to write table");
}

BesselTable read_table(std::istream& in) {
  const std::string data((std::istreambuf_iterator<char>(in)),
                         std::istreambuf_iterator<char>());
  if (data.size() < sizeof kMagic + 8 ||
      std::memcmp(data.data(), kMagic, sizeof kMagic) != 0) {
    throw FormatError("not a table file");
  }
  const std::size_t body = data.size() - 4;
  {
    Reader tail(data, data.size());
    tail.skip(body);
    if (tail.u32() != crc_of(data.data(), body)) {
      throw FormatError("table checksum mismatch");
    }
  }
  Reader r(data, body);
  r.skip(sizeof kMagic);
  const std::uint32_t version = r.u32();
  if (version != kTableFormatVersion) {
    throw FormatError("unsupported table version " + std::to_string(version));
  }
  BesselTable table;
  table.meta.order = r.u32();
  table.meta.build_precision_bits = r.u32();
  table.meta.solver_tolerance = r.f64();
  table.meta.discretization_tolerance = r.f64();
  table.meta.compression_tolerance = r.f64();
  if (table.meta.order < 1 || table.meta.order > 1024) {
    throw FormatError("implausible expansion order");
  }
  for (std::size_t k = 0; k < kSectionCount; ++k) {
    TableSection s;
    const std::uint32_t id = r.u32();
    if (id != k) throw FormatError("sections out of order");
    s.id = static_cast<SectionId>(id);
    s.x_breaks = r.f64s(r.count(8));
    s.y_breaks = r.f64s(r.count(8));
    check_breaks(s.x_breaks);
    check_breaks(s.y_breaks);
    const std::uint32_t rects = r.u32();
    if (rects != s.x_intervals() * s.y_intervals()) {
      throw FormatError("rectangle count does not match the breakpoints");
    }
    s.rects.resize(rects);
    for (std::uint32_t q = 0; q < rects; ++q) {
      auto& e = s.rects[q];
      const std::size_t i = q / s.y_intervals();
      const std::size_t j = q % s.y_intervals();
      e.rect = {s.x_breaks[i], s.x_breaks[i + 1], s.y_breaks[j], s.y_breaks[j + 1]};
      const std::uint32_t degree = r.u32();
      if (degree > table.meta.order) throw FormatError("row count exceeds order");
      r.need((static_cast<std::size_t>(degree) + 1) * 4);
      e.row_lengths.resize(degree + 1);
      std::size_t total = 0;
      for (auto& len : e.row_lengths) {
        len = r.u32();
        if (len > table.meta.order + 1) throw FormatError("row exceeds order");
        total += len;
      }
      r.need(total * 8);
      e.coeffs = r.f64s(total);
    }
    table.sections[k] = std::move(s);
  }
  if (r.pos() != body) throw FormatError("trailing bytes in table file");
  return table;
}

void save_table(const BesselTable& table, const std::string& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw FormatError("cannot open " + path + " for writing");
  write_table(table, out);
}

BesselTable load_table(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FormatError("cannot open " + path);
  return read_table(in);
}

}  // namespace besseleval
