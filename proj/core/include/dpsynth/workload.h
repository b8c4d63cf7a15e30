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
#ifndef DPSYNTH_WORKLOAD_H_
#define DPSYNTH_WORKLOAD_H_

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "dpsynth/query.h"
#include "dpsynth/table.h"

namespace dpsynth {

// Connected, acyclic table subsets of size 1..max_size, in a fixed order.
std::vector<std::vector<std::string>> joinable_table_sets(const DatabaseSchema& schema,
                                                          std::size_t max_size = 3);

// count random queries: a uniformly chosen joinable table set, then 1-3
// predicates on distinct non-key attributes of those tables. Categorical
// predicates use '='; numeric ones a uniform operator. Constants are
// empirical deciles (0.1 .. 0.9) of the original column.
std::vector<ConjunctiveQuery> generate_workload(const Database& original, std::size_t count,
                                                std::uint64_t seed);

}  // namespace dpsynth

#endif  // DPSYNTH_WORKLOAD_H_
