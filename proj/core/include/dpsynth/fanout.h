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
#ifndef DPSYNTH_FANOUT_H_
#define DPSYNTH_FANOUT_H_

#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

#include "dpsynth/schema.h"
#include "dpsynth/table.h"

namespace dpsynth {

// One record's foreign-key change moves one unit between two entries.
inline constexpr double kFanoutSensitivity = 2.0;

// Per referenced key value, how many rows of a row set carry it.
struct FanoutTable {
  AttributeSpec fk_attribute;
  std::vector<double> keys;    // sorted referenced primary-key values
  std::vector<double> counts;  // parallel to keys

  double total() const;
  double count_of(double key) const;

  friend bool operator==(const FanoutTable&, const FanoutTable&) = default;
};

// Counts t[row].fk over row_subset against key_domain (the referenced
// table's primary-key values). Throws std::invalid_argument if fk is not a
// foreign key of t, DataError if a row references a key outside the domain.
FanoutTable build_fanout(const ColumnTable& t, std::string_view fk,
                         std::span<const std::size_t> row_subset,
                         std::vector<double> key_domain);

}  // namespace dpsynth

#endif  // DPSYNTH_FANOUT_H_
