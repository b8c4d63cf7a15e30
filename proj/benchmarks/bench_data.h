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
// Synthetic inputs shared by the benchmarks.
#ifndef DPSYNTH_BENCHMARKS_BENCH_DATA_H_
#define DPSYNTH_BENCHMARKS_BENCH_DATA_H_

#include <random>
#include <string>
#include <vector>

#include "dpsynth/schema.h"
#include "dpsynth/table.h"

namespace dpsynth::bench {

inline AttributeSpec small_int(std::string name, double hi) {
  AttributeSpec a;
  a.name = std::move(name);
  a.kind = AttributeKind::kInteger;
  a.lo = 0;
  a.hi = hi;
  return a;
}

inline AttributeSpec key(std::string name, KeyRole role, std::string target = {}) {
  AttributeSpec a;
  a.name = std::move(name);
  a.kind = AttributeKind::kInteger;
  a.lo = -kMaxExactInteger;
  a.hi = kMaxExactInteger;
  a.role = role;
  a.fk_target = std::move(target);
  return a;
}

// rows x attrs integer table in [0, 15], two latent clusters.
inline ColumnTable clustered(std::size_t rows, std::size_t attrs, std::uint64_t seed = 1) {
  TableSchema s;
  s.name = "t";
  s.is_primary_private = true;
  for (std::size_t a = 0; a < attrs; ++a) s.attributes.push_back(small_int("a" + std::to_string(a), 15));
  std::mt19937_64 g(seed);
  std::uniform_int_distribution<int> low(0, 7), high(8, 15);
  std::vector<std::vector<double>> cols(attrs);
  for (std::size_t r = 0; r < rows; ++r) {
    const bool c = g() & 1;
    for (auto& col : cols) col.push_back(c ? low(g) : high(g));
  }
  return ColumnTable(s, std::move(cols), rows);
}

// parent(id, v) <- child(id, w, pid).
inline Database parent_child(std::size_t parents, std::size_t children, std::uint64_t seed = 1) {
  std::mt19937_64 g(seed);
  TableSchema p;
  p.name = "parent";
  p.is_primary_private = true;
  p.attributes = {key("id", KeyRole::kPrimaryKey), small_int("v", 9)};
  TableSchema c;
  c.name = "child";
  c.max_multiplicity = 4;
  c.attributes = {key("id", KeyRole::kPrimaryKey), small_int("w", 9),
                  key("pid", KeyRole::kForeignKey, "parent")};
  std::uniform_int_distribution<int> val(0, 9);
  std::uniform_int_distribution<std::size_t> ref(1, parents);
  std::vector<std::vector<double>> pc(2), cc(3);
  for (std::size_t i = 0; i < parents; ++i) {
    pc[0].push_back(static_cast<double>(i + 1));
    pc[1].push_back(val(g));
  }
  for (std::size_t i = 0; i < children; ++i) {
    cc[0].push_back(static_cast<double>(i + 1));
    cc[1].push_back(val(g));
    cc[2].push_back(static_cast<double>(ref(g)));
  }
  Database db;
  db.schema.tables = {p, c};
  db.tables.emplace_back(p, std::move(pc), parents);
  db.tables.emplace_back(c, std::move(cc), children);
  return db;
}

}  // namespace dpsynth::bench

#endif  // DPSYNTH_BENCHMARKS_BENCH_DATA_H_
