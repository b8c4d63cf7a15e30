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
#ifndef DPSYNTH_QUERY_H_
#define DPSYNTH_QUERY_H_

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "dpsynth/schema.h"
#include "dpsynth/table.h"

namespace dpsynth {

enum class CompareOp { kEq, kLt, kLe, kGt, kGe };
std::string_view to_string(CompareOp op);
CompareOp compare_op_from_string(std::string_view s);  // throws DataError

struct Predicate {
  std::string table;
  std::string attribute;
  CompareOp op = CompareOp::kEq;
  double value = 0.0;  // categorical: code

  bool matches(double cell) const;

  friend bool operator==(const Predicate&, const Predicate&) = default;
};

// COUNT(*) over the natural PK-FK join of tables, filtered by a conjunction
// of predicates.
struct ConjunctiveQuery {
  std::vector<std::string> tables;
  std::vector<Predicate> predicates;

  friend bool operator==(const ConjunctiveQuery&, const ConjunctiveQuery&) = default;
};

// The foreign-key edges joining the query's tables. Throws DataError if a
// table or predicate attribute is unknown, a constant is outside its
// domain, or the join graph is disconnected or cyclic.
std::vector<ForeignKeyEdge> join_edges(const ConjunctiveQuery& q, const DatabaseSchema& schema);
inline void validate_query(const ConjunctiveQuery& q, const DatabaseSchema& schema) {
  join_edges(q, schema);
}

// Exact result size, by hash-based message passing over the join tree after
// applying each table's predicates.
std::uint64_t cardinality(const ConjunctiveQuery& q, const Database& db);

// SELECT COUNT(*) ... text for running a query on an external DBMS.
std::string to_sql(const ConjunctiveQuery& q, const DatabaseSchema& schema);

// {"tables": [...], "predicates": [{"table", "attribute", "op", "value"}]}
// with categorical values written as labels.
nlohmann::json query_to_json(const ConjunctiveQuery& q, const DatabaseSchema& schema);
ConjunctiveQuery query_from_json(const nlohmann::json& j, const DatabaseSchema& schema);
nlohmann::json workload_to_json(const std::vector<ConjunctiveQuery>& w,
                                const DatabaseSchema& schema);
std::vector<ConjunctiveQuery> workload_from_json(const nlohmann::json& j,
                                                 const DatabaseSchema& schema);

}  // namespace dpsynth

#endif  // DPSYNTH_QUERY_H_
