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

#ifndef BESSELEVAL_TOOLS_COMMANDS_HPP_
#define BESSELEVAL_TOOLS_COMMANDS_HPP_

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace besseleval::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitVerifyFailed = 2;

inline constexpr const char* kTableEnv = "BESSELEVAL_TABLE";
inline constexpr const char* kDefaultTable = "besseleval.tbl";

// Table path from the command line, else $BESSELEVAL_TABLE, else the
// default file name in the working directory.
std::string resolve_table_path(const std::string& flag);

struct BuildArgs {
  std::string output;
  unsigned threads = 0;
  bool quiet = false;
  bool json = false;
};

struct EvalArgs {
  std::string table;
  double nu = 0;
  double t = 0;
  bool json = false;
};

struct VerifyArgs {
  std::string table;
  std::string protocol = "phase";
  std::string range;  // "lo:hi"; empty for the protocol's default
  std::vector<double> orders;  // hankel only
  std::size_t samples = 1000;
  std::uint64_t seed = 1;
  std::optional<double> tolerance;
  unsigned threads = 0;
  bool json = false;
};

struct BenchArgs {
  std::string table;
  std::string range = "0:1e9";
  std::size_t calls = 1000000;
  std::uint64_t seed = 1;
  bool json = false;
};

struct InfoArgs {
  std::string table;
  bool json = false;
};

int run_build(const BuildArgs& args, std::ostream& out);
int run_eval(const EvalArgs& args, std::ostream& out);
int run_verify(const VerifyArgs& args, std::ostream& out);
int run_bench(const BenchArgs& args, std::ostream& out);
int run_info(const InfoArgs& args, std::ostream& out);

// "lo:hi" with lo <= hi; throws std::invalid_argument otherwise.
std::pair<double, double> parse_range(const std::string& text);

}  // namespace besseleval::cli

#endif  // BESSELEVAL_TOOLS_COMMANDS_HPP_
