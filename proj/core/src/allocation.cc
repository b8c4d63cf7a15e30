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
#include "dpsynth/allocation.h"

#include "dpsynth/error.h"

namespace dpsynth {

const TableBudget& BudgetAllocation::for_table(std::string_view name) const {
  for (const auto& t : tables) {
    if (t.table == name) return t;
  }
  throw ConfigError("no budget allocated for table '" + std::string(name) + "'");
}

BudgetAllocation allocate_database_budget(const DatabaseSchema& schema, Budget total,
                                          double gamma) {
  if (!(total.epsilon > 0.0)) throw ConfigError("total epsilon must be > 0");
  if (!(gamma >= 0.0 && gamma <= 1.0)) throw ConfigError("gamma must lie in [0, 1]");
  double tau_sum = 0.0;
  double tau_fk_sum = 0.0;
  BudgetAllocation out;
  for (const auto& t : schema.tables) {
    TableBudget tb;
    tb.table = t.name;
    tb.multiplicity = t.max_multiplicity;
    tb.foreign_keys = static_cast<int>(t.foreign_key_indices().size());
    tau_sum += t.max_multiplicity;
    tau_fk_sum += static_cast<double>(t.max_multiplicity) * tb.foreign_keys;
    out.tables.push_back(tb);
  }
  const double spn_total = total.epsilon * gamma;
  const double fanout_total = total.epsilon * (1.0 - gamma);
  for (auto& tb : out.tables) {
    tb.spn.epsilon = spn_total / tau_sum;
    tb.fanout.epsilon = tau_fk_sum > 0 && tb.foreign_keys > 0 ? fanout_total / tau_fk_sum : 0.0;
  }
  if (tau_fk_sum == 0.0) {
    out.unspent = fanout_total;
    if (fanout_total > 0.0) {
      out.warnings.push_back("schema has no foreign keys; " + std::to_string(fanout_total) +
                             " of the budget (1 - gamma) is unused");
    }
  }
  if (gamma == 0.0) {
    out.warnings.push_back("gamma = 0 leaves no budget for SPN construction");
  }
  if (gamma == 1.0 && tau_fk_sum > 0.0) {
    out.warnings.push_back("gamma = 1 leaves no budget for fanout construction");
  }
  return out;
}

double database_epsilon(const BudgetLedger& ledger, const DatabaseSchema& schema) {
  double total = 0.0;
  for (const auto& t : schema.tables) {
    total += t.max_multiplicity * ledger.compose_table(t.name);
  }
  return total;
}

}  // namespace dpsynth
