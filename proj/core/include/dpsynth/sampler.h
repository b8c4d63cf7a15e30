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
#ifndef DPSYNTH_SAMPLER_H_
#define DPSYNTH_SAMPLER_H_

#include <cstddef>
#include <utility>
#include <vector>

#include "dpsynth/rng.h"
#include "dpsynth/schema.h"
#include "dpsynth/spn.h"
#include "dpsynth/table.h"

namespace dpsynth {

struct SampleStats {
  // Leaves whose clamped weights were all zero and fell back to uniform.
  std::size_t degenerate_leaves = 0;
};

// Row targets of a sum node's children: round(n * w_left) and the rest.
std::pair<std::size_t, std::size_t> split_target(std::size_t n, double weight_left);

// Draws n rows from tree. Non-key columns and foreign keys come from the
// tree (foreign keys as referenced primary-key values of the source data);
// the primary key, if any, is numbered 1..n. Throws DataError if n > 0 and a
// non-primary-key attribute is not covered by the tree.
ColumnTable sample_table(const SpnTree& tree, std::size_t n, RngStream& rng,
                         SampleStats* stats = nullptr);

// Sorted original primary-key values mapped to synthetic ids 1..size.
class KeyMap {
 public:
  KeyMap() = default;
  explicit KeyMap(std::vector<double> original_keys);

  std::size_t size() const { return keys_.size(); }
  // Throws DataError for a value that is not an original key.
  double map(double original) const;

 private:
  std::vector<double> keys_;
};

// Samples every table from its tree (trees parallel to schema.tables, each
// with tree.rows rows), numbers primary keys 1..|T| and remaps foreign keys
// through the KeyMap of the referenced table, built from key_domains
// (parallel to schema.tables; sorted original primary keys). Consumes no
// privacy budget.
Database assemble_database(const DatabaseSchema& schema, const std::vector<SpnTree>& trees,
                           const std::vector<std::vector<double>>& key_domains, RngStream& rng,
                           SampleStats* stats = nullptr, std::size_t threads = 1);

}  // namespace dpsynth

#endif  // DPSYNTH_SAMPLER_H_
