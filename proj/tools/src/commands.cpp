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

#include "commands.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <stdexcept>

#include "besseleval/eval.hpp"
#include "besseleval/protocols/protocols.hpp"
#include "besseleval/table.hpp"
#include "json.hpp"

namespace besseleval::cli {
namespace {

using json = nlohmann::json;
namespace pr = besseleval::protocols;

std::string fmt(double v, int digits = 17) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", digits, v);
  return buf;
}

std::string sci(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2e", v);
  return buf;
}

// JSON has no infinities; they are written as strings.
json number(double v) {
  if (std::isfinite(v)) return v;
  if (std::isnan(v)) return "nan";
  return v > 0 ? "inf" : "-inf";
}

std::vector<std::pair<double, double>> default_ranges(pr::Protocol p) {
  switch (p) {
    case pr::Protocol::kPhase: return pr::decades(0, 1e9);
    case pr::Protocol::kLogs: return pr::decades(0.5, 1e4);
    case pr::Protocol::kDeep: return pr::decades(100, 1e9);
    case pr::Protocol::kHankel: break;
  }
  return {};
}

}  // namespace

std::string resolve_table_path(const std::string& flag) {
  if (!flag.empty()) return flag;
  if (const char* env = std::getenv(kTableEnv); env && *env) return env;
  return kDefaultTable;
}

std::pair<double, double> parse_range(const std::string& text) {
  const auto colon = text.find(':');
  if (colon == std::string::npos) {
    throw std::invalid_argument("range must be lo:hi");
  }
  std::size_t used = 0;
  const std::string a = text.substr(0, colon);
  const std::string b = text.substr(colon + 1);
  const double lo = std::stod(a, &used);
  if (used != a.size()) throw std::invalid_argument("bad range start");
  const double hi = std::stod(b, &used);
  if (used != b.size()) throw std::invalid_argument("bad range end");
  if (!(lo >= 0) || !(lo < hi)) throw std::invalid_argument("range must satisfy 0 <= lo < hi");
  return {lo, hi};
}

int run_build(const BuildArgs& args, std::ostream& out) {
  BuildOptions options;
  options.threads = args.threads;
  if (!args.quiet && !args.json) {
    options.progress = [](const std::string& m) { std::cerr << m << '\n'; };
  }
  BuildStats stats;
  const BesselTable table = build_table(options, &stats);
  const std::string path = resolve_table_path(args.output);
  save_table(table, path);
  const auto bytes = std::filesystem::file_size(path);
  if (args.json) {
    json j = {{"path", path},
              {"bytes", bytes},
              {"seconds", stats.seconds},
              {"orders", stats.orders},
              {"oscillatory_intervals", stats.oscillatory_intervals},
              {"nonoscillatory_intervals", stats.nonoscillatory_intervals},
              {"small_order_nu_intervals", stats.small_order_nu_intervals},
              {"small_order_t_intervals", stats.small_order_t_intervals},
              {"oscillatory_x_tail", stats.oscillatory_x_tail},
              {"nonoscillatory_x_tail", stats.nonoscillatory_x_tail}};
    out << j.dump() << '\n';
  } else {
    out << "wrote " << path << ": " << bytes << " bytes in " << fmt(stats.seconds, 3)
        << " s\n"
        << "orders solved            " << stats.orders << '\n'
        << "oscillatory intervals    " << stats.oscillatory_intervals << '\n'
        << "nonoscillatory intervals " << stats.nonoscillatory_intervals << '\n'
        << "small-order grid         " << stats.small_order_nu_intervals << " x "
        << stats.small_order_t_intervals << '\n';
  }
  return kExitOk;
}

int run_eval(const EvalArgs& args, std::ostream& out) {
  const Evaluator ev = Evaluator::from_file(resolve_table_path(args.table));
  const EvalResult r = ev.eval(args.nu, args.t);
  const bool osc = r.region == Region::kOscillatory;
  if (args.json) {
    json j = {{"nu", args.nu},
              {"t", args.t},
              {"region", osc ? "oscillatory" : "nonoscillatory"},
              {"branch", r.branch},
              {"j", number(r.j)},
              {"y", number(r.y)}};
    if (osc) {
      j["alpha"] = number(*r.alpha);
      j["alphap"] = number(*r.alphap);
    } else {
      j["log_j"] = number(*r.log_j);
      j["log_neg_y"] = number(*r.log_neg_y);
    }
    out << j.dump() << '\n';
    return kExitOk;
  }
  out << "region    " << (osc ? "oscillatory" : "nonoscillatory") << " (branch "
      << r.branch << ")\n"
      << "J         " << fmt(r.j) << '\n'
      << "Y         " << fmt(r.y) << '\n';
  if (osc) {
    out << "alpha     " << fmt(*r.alpha) << '\n'
        << "alpha'    " << fmt(*r.alphap) << '\n';
  } else {
    out << "log J     " << fmt(*r.log_j) << '\n'
        << "log(-Y)   " << fmt(*r.log_neg_y) << '\n';
  }
  return kExitOk;
}

int run_verify(const VerifyArgs& args, std::ostream& out) {
  const auto protocol = pr::parse_protocol(args.protocol);
  if (!protocol) throw std::invalid_argument("unknown protocol " + args.protocol);
  const Evaluator ev = Evaluator::from_file(resolve_table_path(args.table));

  std::vector<std::pair<double, double>> ranges;
  if (*protocol == pr::Protocol::kHankel) {
    std::vector<double> orders = args.orders;
    if (orders.empty()) {
      orders = {0, 1};
      for (double n = 10; n <= 1e9; n *= 10) orders.push_back(n);
    }
    for (double n : orders) ranges.emplace_back(n, n);
  } else if (!args.range.empty()) {
    const auto [lo, hi] = parse_range(args.range);
    ranges = pr::decades(lo, hi);
  } else {
    ranges = default_ranges(*protocol);
  }

  bool failed = false;
  if (!args.json) {
    out << "protocol " << args.protocol << ", " << args.samples
        << " samples per row, seed " << args.seed << '\n';
    if (*protocol == pr::Protocol::kLogs || *protocol == pr::Protocol::kDeep) {
      out << "nu range              -nu+log J   nu+log(-Y)  tolerance  skipped\n";
    } else {
      out << "nu range              max error   tolerance  skipped\n";
    }
  }
  for (std::size_t k = 0; k < ranges.size(); ++k) {
    const auto [lo, hi] = ranges[k];
    const auto samples =
        pr::draw(*protocol, lo, hi, args.samples, args.seed + 7919 * k);
    const auto report = pr::run(ev, *protocol, samples, lo, hi, args.threads);
    const double tol =
        args.tolerance ? *args.tolerance : pr::default_tolerance(*protocol, lo, hi);
    const bool ok = report.max_error() <= tol;
    failed = failed || !ok;
    if (args.json) {
      json j = {{"protocol", args.protocol},
                {"nu_lo", lo},
                {"nu_hi", hi},
                {"samples", report.samples},
                {"skipped", report.skipped},
                {"max_error", report.max_first},
                {"worst_nu", report.worst_first.nu},
                {"worst_t", report.worst_first.t},
                {"tolerance", tol},
                {"pass", ok}};
      if (*protocol == pr::Protocol::kLogs || *protocol == pr::Protocol::kDeep) {
        j["max_error_log_neg_y"] = report.max_second;
        j["worst_log_neg_y_nu"] = report.worst_second.nu;
        j["worst_log_neg_y_t"] = report.worst_second.t;
      }
      out << j.dump() << '\n';
      continue;
    }
    char row[160];
    const std::string label = lo == hi ? fmt(lo, 10) : fmt(lo, 6) + " - " + fmt(hi, 6);
    if (*protocol == pr::Protocol::kLogs || *protocol == pr::Protocol::kDeep) {
      std::snprintf(row, sizeof row, "%-21s %-11s %-11s %-10s %zu%s\n", label.c_str(),
                    sci(report.max_first).c_str(), sci(report.max_second).c_str(),
                    sci(tol).c_str(), report.skipped, ok ? "" : "  FAIL");
    } else {
      std::snprintf(row, sizeof row, "%-21s %-11s %-10s %zu%s\n", label.c_str(),
                    sci(report.max_first).c_str(), sci(tol).c_str(), report.skipped,
                    ok ? "" : "  FAIL");
    }
    out << row;
  }
  return failed ? kExitVerifyFailed : kExitOk;
}

int run_bench(const BenchArgs& args, std::ostream& out) {
  const Evaluator ev = Evaluator::from_file(resolve_table_path(args.table));
  const auto [lo, hi] = parse_range(args.range);
  if (hi > ev.nu_max() * (1 + 1e-15)) throw std::invalid_argument("range exceeds the table");
  if (args.calls == 0) throw std::invalid_argument("calls must be positive");

  // Orders log-uniform over the range (uniform below 1), t uniform in
  // (0, 1000 max(nu, 1)).
  constexpr std::size_t kPoints = 1 << 14;
  pr::Rng rng(args.seed);
  const double llo = std::log10(std::max(lo, 1.0));
  const double lhi = std::log10(std::max(hi, 1.0));
  std::vector<pr::Sample> points(kPoints);
  for (auto& p : points) {
    if (hi <= 1 || (lo < 1 && rng.uniform() < 0.1)) {
      p.nu = rng.uniform(lo, std::min(hi, 1.0));
    } else {
      p.nu = std::pow(10.0, rng.uniform(llo, lhi));
    }
    p.t = 1000 * std::max(p.nu, 1.0) * (1 - rng.uniform());
  }

  constexpr std::size_t kBatch = 4096;
  std::vector<double> batch_ns;
  double sink = 0;
  std::size_t done = 0;
  const auto start = std::chrono::steady_clock::now();
  while (done < args.calls) {
    const std::size_t n = std::min(kBatch, args.calls - done);
    const auto b0 = std::chrono::steady_clock::now();
    for (std::size_t k = 0; k < n; ++k) {
      const auto& p = points[(done + k) & (kPoints - 1)];
      const EvalResult r = ev.eval(p.nu, p.t);
      sink += r.j;
    }
    const auto b1 = std::chrono::steady_clock::now();
    batch_ns.push_back(std::chrono::duration<double, std::nano>(b1 - b0).count() /
                       static_cast<double>(n));
    done += n;
  }
  const double total = std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
                           .count();
  std::sort(batch_ns.begin(), batch_ns.end());
  const double mean_ns = total * 1e9 / static_cast<double>(args.calls);
  const double median_ns = batch_ns[batch_ns.size() / 2];
  if (args.json) {
    json j = {{"calls", args.calls},
              {"mean_ns", mean_ns},
              {"median_batch_ns", median_ns},
              {"checksum", number(sink)}};
    out << j.dump() << '\n';
  } else {
    out << "calls          " << args.calls << '\n'
        << "mean latency   " << fmt(mean_ns, 4) << " ns\n"
        << "median batch   " << fmt(median_ns, 4) << " ns per call\n";
  }
  return kExitOk;
}

int run_info(const InfoArgs& args, std::ostream& out) {
  const std::string path = resolve_table_path(args.table);
  const BesselTable table = load_table(path);
  const auto bytes = std::filesystem::file_size(path);
  if (args.json) {
    json sections = json::array();
    for (const auto& s : table.sections) {
      sections.push_back({{"name", section_name(s.id)},
                          {"x_intervals", s.x_intervals()},
                          {"y_intervals", s.y_intervals()},
                          {"rectangles", s.rects.size()},
                          {"coefficients", s.coefficient_count()}});
    }
    json j = {{"path", path},
              {"bytes", bytes},
              {"version", kTableFormatVersion},
              {"order", table.meta.order},
              {"build_precision_bits", table.meta.build_precision_bits},
              {"solver_tolerance", table.meta.solver_tolerance},
              {"discretization_tolerance", table.meta.discretization_tolerance},
              {"compression_tolerance", table.meta.compression_tolerance},
              {"nu_max", table.nu_max()},
              {"sections", sections}};
    out << j.dump() << '\n';
    return kExitOk;
  }
  out << path << ": " << bytes << " bytes, format version " << kTableFormatVersion << '\n'
      << "order " << table.meta.order << ", built with " << table.meta.build_precision_bits
      << "-bit mantissa, solver tolerance " << sci(table.meta.solver_tolerance)
      << ", compression " << sci(table.meta.compression_tolerance) << '\n'
      << "orders 0 to " << fmt(table.nu_max(), 6) << '\n'
      << "section  x-intervals  y-intervals  rectangles  coefficients\n";
  for (const auto& s : table.sections) {
    char row[96];
    std::snprintf(row, sizeof row, "%-8s %11zu  %11zu  %10zu  %12zu\n",
                  section_name(s.id).c_str(), s.x_intervals(), s.y_intervals(),
                  s.rects.size(), s.coefficient_count());
    out << row;
  }
  return kExitOk;
}

}  // namespace besseleval::cli
