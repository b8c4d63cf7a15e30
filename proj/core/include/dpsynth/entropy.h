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
#ifndef DPSYNTH_ENTROPY_H_
#define DPSYNTH_ENTROPY_H_

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "dpsynth/table.h"

namespace dpsynth {

// Dense per-row codes for tuples over chosen columns: rows get the same code
// iff their values agree on every chosen column. Column codes are computed
// once, so evaluating many column subsets of one table stays cheap.
class TupleEncoder {
 public:
  explicit TupleEncoder(const ColumnTable& t);

  std::size_t row_count() const { return rows_; }
  // Codes in [0, distinct) for the given columns; distinct is written out.
  std::vector<std::uint32_t> encode(std::span<const std::size_t> columns,
                                    std::size_t& distinct) const;
  // Empirical entropy (bits) of the tuples over the given columns.
  double entropy(std::span<const std::size_t> columns) const;

 private:
  std::size_t rows_ = 0;
  std::vector<std::vector<std::uint32_t>> column_codes_;
  std::vector<std::size_t> column_cardinality_;
};

// Shannon entropy (bits) of the empirical distribution of full rows.
// Throws std::invalid_argument on an empty table.
double entropy(const ColumnTable& t);

// (H(T[left]) + H(T[right]) - H(T)) / log2 |T| for a column partition.
// Throws std::invalid_argument when |T| < 2.
double nmi(const ColumnTable& t, const IndexPartition& p);
double nmi(const TupleEncoder& enc, const IndexPartition& p);

// Global sensitivity bound for nmi under one-record replacement on an n-row
// table: 3 * dH(n) / log2 n with dH(n) = (2/n) log2 n + 2 / (n ln 2), capped
// at 3. Throws std::invalid_argument when n < 2.
double nmi_sensitivity(std::size_t n);

}  // namespace dpsynth

#endif  // DPSYNTH_ENTROPY_H_
