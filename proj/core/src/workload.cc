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
#include "dpsynth/workload.h"

#include <algorithm>
#include <cmath>
#include <map>
#include <utility>

#include "dpsynth/error.h"
#include "dpsynth/rng.h"

namespace dpsynth {

std::vector<std::vector<std::string>> joinable_table_sets(const DatabaseSchema& schema,
                                                          std::size_t max_size) {
  const std::size_t n = schema.tables.size();
  std::vector<std::vector<std::string>> out;
  std::vector<std::size_t> pick;
  // Enumerate index combinations of each size in lexicographic order.
  for (std::size_t size = 1; size <= std::min(max_size, n); ++size) {
    pick.resize(size);
    for (std::size_t i = 0; i < size; ++i) pick[i] = i;
    while (true) {
      ConjunctiveQuery q;
      for (std::size_t i : pick) q.tables.push_back(schema.tables[i].name);
      try {
        join_edges(q, schema);
        out.push_back(std::move(q.tables));
      } catch (const DataError&) {
      }
      std::size_t i = size;
      while (i > 0 && pick[i - 1] == n - size + i - 1) --i;
      if (i == 0) break;
      ++pick[i - 1];
      for (std::size_t j = i; j < size; ++j) pick[j] = pick[j - 1] + 1;
    }
  }
  return out;
}

std::vector<ConjunctiveQuery> generate_workload(const Database& original, std::size_t count,
                                                std::uint64_t seed) {
  if (count < 1) throw ConfigError("workload size must be >= 1");
  const DatabaseSchema& schema = original.schema;
  const auto sets = joinable_table_sets(schema, 3);
  if (sets.empty()) throw DataError("schema has no joinable table set");

  std::map<std::pair<std::string, std::size_t>, std::vector<double>> sorted_columns;
  auto sorted_column = [&](const std::string& table, std::size_t attr) -> const std::vector<double>& {
    auto key = std::make_pair(table, attr);
    auto it = sorted_columns.find(key);
    if (it == sorted_columns.end()) {
      auto col = original.table(table).column(attr);
      std::vector<double> v(col.begin(), col.end());
      std::sort(v.begin(), v.end());
      it = sorted_columns.emplace(std::move(key), std::move(v)).first;
    }
    return it->second;
  };

  RngStream rng(seed, "workload");
  std::vector<ConjunctiveQuery> out;
  out.reserve(count);
  for (std::size_t qi = 0; qi < count; ++qi) {
    ConjunctiveQuery q;
    q.tables = sets[rng.uniform_index(sets.size())];
    std::vector<std::pair<std::string, std::size_t>> candidates;
    for (const auto& name : q.tables) {
      for (std::size_t a : schema.table(name).model_attribute_indices()) {
        candidates.emplace_back(name, a);
      }
    }
    const std::size_t wanted = std::min<std::size_t>(1 + rng.uniform_index(3), candidates.size());
    for (std::size_t k = 0; k < wanted; ++k) {
      std::swap(candidates[k], candidates[k + rng.uniform_index(candidates.size() - k)]);
      const auto& [table, attr] = candidates[k];
      const AttributeSpec& spec = schema.table(table).attributes[attr];
      Predicate p;
      p.table = table;
      p.attribute = spec.name;
      p.op = spec.kind == AttributeKind::kCategorical
                 ? CompareOp::kEq
                 : static_cast<CompareOp>(rng.uniform_index(5));
      const double level = static_cast<double>(1 + rng.uniform_index(9)) / 10.0;
      const auto& values = sorted_column(table, attr);
      if (values.empty()) {
        p.value = spec.kind == AttributeKind::kCategorical ? 0.0 : spec.lo;
      } else {
        const auto at = static_cast<std::size_t>(
            std::floor(level * static_cast<double>(values.size() - 1)));
        p.value = values[at];
      }
      q.predicates.push_back(std::move(p));
    }
    out.push_back(std::move(q));
  }
  return out;
}

}  // namespace dpsynth
