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

#include <exception>
#include <iostream>

#include "CLI11.hpp"
#include "besseleval/errors.hpp"
#include "commands.hpp"

namespace cli = besseleval::cli;

int main(int argc, char** argv) {
  CLI::App app{"Bessel functions of real order and positive argument"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "besseleval 0.1.0");

  cli::BuildArgs build;
  auto* build_cmd = app.add_subcommand("build", "Build the table and write it to disk");
  build_cmd->add_option("-o,--output,--out", build.output,
                        "Output path (default: $BESSELEVAL_TABLE or besseleval.tbl)");
  build_cmd->add_option("--threads", build.threads, "Worker threads, 0 for all cores");
  build_cmd->add_flag("-q,--quiet", build.quiet, "No progress messages");
  build_cmd->add_flag("--json", build.json, "Print a JSON record");

  cli::EvalArgs eval;
  auto* eval_cmd = app.add_subcommand("eval", "Evaluate J and Y at one point");
  eval_cmd->add_option("--table", eval.table, "Table file");
  eval_cmd->add_option("--nu", eval.nu, "Order")->required();
  eval_cmd->add_option("--t", eval.t, "Argument")->required();
  eval_cmd->add_flag("--json", eval.json, "Print a JSON record");

  cli::VerifyArgs verify;
  double tolerance = 0;
  auto* verify_cmd =
      app.add_subcommand("verify", "Compare against the high-precision reference");
  verify_cmd->add_option("--table", verify.table, "Table file");
  verify_cmd->add_option("--protocol", verify.protocol, "phase, logs, deep or hankel")
      ->check(CLI::IsMember({"phase", "logs", "deep", "hankel"}));
  verify_cmd->add_option("--range", verify.range, "Order range lo:hi, split into decades");
  verify_cmd->add_option("--orders", verify.orders, "Integer orders for hankel")
      ->delimiter(',');
  verify_cmd->add_option("--samples", verify.samples, "Points per decade or order");
  verify_cmd->add_option("--seed", verify.seed, "Random seed");
  auto* tol_opt =
      verify_cmd->add_option("--tolerance", tolerance, "Override the pass threshold");
  verify_cmd->add_option("--threads", verify.threads, "Worker threads, 0 for all cores");
  verify_cmd->add_flag("--json", verify.json, "One JSON record per line");

  cli::BenchArgs bench;
  auto* bench_cmd = app.add_subcommand("bench", "Measure evaluation latency");
  bench_cmd->add_option("--table", bench.table, "Table file");
  bench_cmd->add_option("--range", bench.range, "Order range lo:hi");
  bench_cmd->add_option("--calls", bench.calls, "Number of evaluations");
  bench_cmd->add_option("--seed", bench.seed, "Random seed");
  bench_cmd->add_flag("--json", bench.json, "Print a JSON record");

  cli::InfoArgs info;
  auto* info_cmd = app.add_subcommand("info", "Describe a table file");
  info_cmd->add_option("table,--table", info.table, "Table file");
  info_cmd->add_flag("--json", info.json, "Print a JSON record");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? cli::kExitOk : cli::kExitUsage;
  }
  if (*tol_opt) verify.tolerance = tolerance;

  try {
    if (*build_cmd) return cli::run_build(build, std::cout);
    if (*eval_cmd) return cli::run_eval(eval, std::cout);
    if (*verify_cmd) return cli::run_verify(verify, std::cout);
    if (*bench_cmd) return cli::run_bench(bench, std::cout);
    if (*info_cmd) return cli::run_info(info, std::cout);
  } catch (const std::exception& e) {
    std::cerr << "besseleval: " << e.what() << '\n';
    return cli::kExitUsage;
  }
  return cli::kExitUsage;
}
