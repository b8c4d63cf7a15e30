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
#ifndef DPSYNTH_PIPELINE_H_
#define DPSYNTH_PIPELINE_H_

#include <cstddef>
#include <cstdint>
#include <vector>

#include "dpsynth/allocation.h"
#include "dpsynth/ledger.h"
#include "dpsynth/sampler.h"
#include "dpsynth/spn.h"
#include "dpsynth/table.h"

namespace dpsynth {

struct SynthesisConfig {
  double epsilon = 3.2;
  double gamma = 0.9;
  SpnParams spn;
  std::uint64_t seed = 0;
  std::size_t threads = 1;  // 0: all cores

  // Throws ConfigError naming the violated constraint.
  void validate() const;
};

struct SynthesisResult {
  BudgetAllocation allocation;
  std::vector<SpnTree> trees;  // schema order, fanout leaves included
  BudgetLedger ledger;
  Database synthetic;
  SampleStats sample_stats;
  double spent_epsilon = 0.0;  // database-level, composed from the ledger
};

// Model for one table: an SPN over its non-key attributes with the table's
// SPN budget, then one fanout augmentation per foreign key. Spends are
// recorded in ledger.
SpnTree build_table_model(const Database& db, std::size_t table, const TableBudget& budget,
                          const SynthesisConfig& cfg, BudgetLedger& ledger);

// Budget allocation, per-table models (in parallel), a ledger check and
// sampling. Output is identical for any thread count. Throws BudgetError if
// the composed ledger exceeds cfg.epsilon.
SynthesisResult synthesize(const Database& db, const SynthesisConfig& cfg);

}  // namespace dpsynth

#endif  // DPSYNTH_PIPELINE_H_
