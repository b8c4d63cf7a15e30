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
#ifndef DPSYNTH_ALLOCATION_H_
#define DPSYNTH_ALLOCATION_H_

#include <string>
#include <vector>

#include "dpsynth/ledger.h"
#include "dpsynth/schema.h"

namespace dpsynth {

struct TableBudget {
  std::string table;
  Budget spn;     // SPN construction, table-level
  Budget fanout;  // per foreign key of this table, table-level
  int multiplicity = 1;
  int foreign_keys = 0;
};

struct BudgetAllocation {
  std::vector<TableBudget> tables;  // schema order
  // Budget that no mechanism can use (the fanout share of a schema without
  // foreign keys).
  double unspent = 0.0;
  std::vector<std::string> warnings;

  const TableBudget& for_table(std::string_view name) const;
};

// Splits a database-level budget so that
//   sum_i tau_i * eps_s_i + sum_{FK edges} tau_i * eps_f_i = total
// with eps_s_i = total * gamma / sum_i tau_i and
//      eps_f_i = total * (1 - gamma) / sum_i tau_i * |FK(T_i)|.
BudgetAllocation allocate_database_budget(const DatabaseSchema& schema, Budget total,
                                          double gamma);

// Database-level epsilon implied by a ledger: sum_i tau_i * composed spend of
// table i (all channels).
double database_epsilon(const BudgetLedger& ledger, const DatabaseSchema& schema);

}  // namespace dpsynth

#endif  // DPSYNTH_ALLOCATION_H_
