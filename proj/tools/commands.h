// Copyright 2026 The dpsynth Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
#ifndef DPSYNTH_TOOLS_COMMANDS_H_
#define DPSYNTH_TOOLS_COMMANDS_H_

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

namespace dpsynth::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitConfig = 1;
inline constexpr int kExitData = 2;
inline constexpr int kExitBudget = 3;

struct RunConfig {
  double epsilon = 3.2;
  double alpha = 0.5;
  std::size_t beta = 10000;
  double gamma = 0.9;
  double gamma1 = 0.5;
  double gamma2 = 0.5;
  int iterations = 5;
  std::optional<std::uint64_t> seed;
  std::size_t threads = 0;
  std::string schema;
  std::string data;
  std::string out;

  // Throws ConfigError; returns warnings for tolerated oddities.
  std::vector<std::string> validate() const;
  nlohmann::json parameters_json() const;
};

struct EvalOptions {
  std::string schema;  // default: <synth>/schema.json
  std::string original;
  std::string synthetic;
  std::string workload;      // JSON workload file
  std::size_t generate = 0;  // or generate this many queries
  std::vector<std::size_t> lambdas{2, 3, 4};
  std::optional<std::uint64_t> seed;
  std::size_t threads = 0;
  std::string report;  // JSON report path; none: summary only
};

struct WorkloadOptions {
  std::string schema;
  std::string data;
  std::size_t count = 1000;
  std::optional<std::uint64_t> seed;
  std::string out;
};

// Seed precedence: explicit value, then DPSYNTH_SEED, then a random seed.
std::uint64_t resolve_seed(const std::optional<std::uint64_t>& seed);

// Each command returns a process exit code: 0 success, 1 configuration
// error, 2 data error, 3 privacy budget violation.
int cmd_synth(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_eval(const EvalOptions& opts, std::ostream& out, std::ostream& err);
int cmd_workload(const WorkloadOptions& opts, std::ostream& out, std::ostream& err);
int cmd_inspect(const std::string& spn_file, std::ostream& out, std::ostream& err);

// Parses argv (flags override values from --config JSON) and dispatches.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace dpsynth::cli

#endif  // DPSYNTH_TOOLS_COMMANDS_H_
