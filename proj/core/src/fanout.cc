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
#include "dpsynth/fanout.h"

#include <algorithm>
#include <numeric>
#include <stdexcept>

#include "dpsynth/error.h"

namespace dpsynth {

double FanoutTable::total() const { return std::accumulate(counts.begin(), counts.end(), 0.0); }

double FanoutTable::count_of(double key) const {
  auto it = std::lower_bound(keys.begin(), keys.end(), key);
  if (it == keys.end() || *it != key) return 0.0;
  return counts[static_cast<std::size_t>(it - keys.begin())];
}

FanoutTable build_fanout(const ColumnTable& t, std::string_view fk,
                         std::span<const std::size_t> row_subset,
                         std::vector<double> key_domain) {
  auto idx = t.schema().index_of(fk);
  if (!idx || t.schema().attributes[*idx].role != KeyRole::kForeignKey) {
    throw std::invalid_argument("'" + std::string(fk) + "' is not a foreign key of table '" +
                                t.name() + "'");
  }
  std::sort(key_domain.begin(), key_domain.end());
  key_domain.erase(std::unique(key_domain.begin(), key_domain.end()), key_domain.end());
  FanoutTable f{t.schema().attributes[*idx], std::move(key_domain), {}};
  f.counts.assign(f.keys.size(), 0.0);
  auto col = t.column(*idx);
  for (std::size_t r : row_subset) {
    if (r >= t.row_count()) throw std::out_of_range("fanout row index out of range");
    auto it = std::lower_bound(f.keys.begin(), f.keys.end(), col[r]);
    if (it == f.keys.end() || *it != col[r]) {
      throw DataError("foreign key value " + std::to_string(col[r]) + " of '" + t.name() +
                      "." + std::string(fk) + "' is not a referenced key");
    }
    f.counts[static_cast<std::size_t>(it - f.keys.begin())] += 1.0;
  }
  return f;
}

}  // namespace dpsynth
