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
#ifndef DPSYNTH_METRICS_H_
#define DPSYNTH_METRICS_H_

#include <cstddef>
#include <cstdint>
#include <map>
#include <vector>

#include <nlohmann/json.hpp>

#include "dpsynth/query.h"
#include "dpsynth/table.h"

namespace dpsynth {

inline constexpr double kKldSmoothing = 1e-10;
inline constexpr std::size_t kMaxMarginals = 10000;

// KL divergence (nats) between two discrete distributions given as counts
// over the same cells, after adding kKldSmoothing to every cell.
double kl_divergence(const std::vector<double>& p_counts, const std::vector<double>& q_counts);

// Average KL divergence of original vs synthetic over every lambda-subset of
// every table's non-key attributes, at histogram-bin granularity. Tables
// with fewer than lambda attributes (or no original rows) are skipped;
// subsets beyond kMaxMarginals are sampled with seed. Throws ConfigError
// for lambda < 1 or if every table is skipped.
double kld_lambda(const Database& original, const Database& synthetic, std::size_t lambda,
                  std::uint64_t seed = 0);

// max(a / b, b / a), computed on a + 1 and b + 1 when either side is zero.
double qerror(std::uint64_t original, std::uint64_t synthetic);

struct SummaryStats {
  double mean = 0.0;
  double median = 0.0;
  double p75 = 0.0;
  double max = 0.0;
  std::size_t count = 0;
};

// Percentiles by linear interpolation between order statistics.
double percentile(std::vector<double> values, double p);
SummaryStats summarize(const std::vector<double>& values);

struct QueryOutcome {
  ConjunctiveQuery query;
  std::uint64_t original = 0;
  std::uint64_t synthetic = 0;
  double qerror = 1.0;
};

struct EvalReport {
  std::map<std::size_t, double> kld;  // lambda -> average KLD
  std::vector<QueryOutcome> queries;
  SummaryStats qerror_summary;
  nlohmann::json metadata = nlohmann::json::object();

  nlohmann::json to_json(const DatabaseSchema& schema) const;
};

// Throws DataError if the two databases' schemas differ.
EvalReport evaluate(const Database& original, const Database& synthetic,
                    const std::vector<std::size_t>& lambdas,
                    const std::vector<ConjunctiveQuery>& workload, std::uint64_t seed = 0,
                    std::size_t threads = 1);

}  // namespace dpsynth

#endif  // DPSYNTH_METRICS_H_
