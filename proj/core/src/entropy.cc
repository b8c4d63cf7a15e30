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
#include "dpsynth/entropy.h"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <unordered_map>

namespace dpsynth {
namespace {

double entropy_of_codes(const std::vector<std::uint32_t>& codes, std::size_t distinct) {
  const std::size_t n = codes.size();
  if (n == 0) throw std::invalid_argument("entropy of an empty table is undefined");
  std::vector<std::uint32_t> counts(distinct, 0);
  for (auto c : codes) ++counts[c];
  // H = log2 n - (1/n) sum c log2 c
  double acc = 0.0;
  for (auto c : counts) {
    if (c > 1) acc += c * std::log2(static_cast<double>(c));
  }
  const double h = std::log2(static_cast<double>(n)) - acc / static_cast<double>(n);
  return std::max(0.0, h);
}

}  // namespace

TupleEncoder::TupleEncoder(const ColumnTable& t) : rows_(t.row_count()) {
  column_codes_.resize(t.column_count());
  column_cardinality_.resize(t.column_count());
  for (std::size_t c = 0; c < t.column_count(); ++c) {
    auto col = t.column(c);
    std::unordered_map<std::uint64_t, std::uint32_t> ids;
    ids.reserve(64);
    auto& codes = column_codes_[c];
    codes.resize(rows_);
    for (std::size_t r = 0; r < rows_; ++r) {
      const double v = col[r] == 0.0 ? 0.0 : col[r];  // fold -0.0
      auto [it, inserted] = ids.try_emplace(std::bit_cast<std::uint64_t>(v),
                                            static_cast<std::uint32_t>(ids.size()));
      codes[r] = it->second;
    }
    column_cardinality_[c] = ids.size();
  }
}

std::vector<std::uint32_t> TupleEncoder::encode(std::span<const std::size_t> columns,
                                                std::size_t& distinct) const {
  if (columns.empty()) {
    distinct = rows_ > 0 ? 1 : 0;
    return std::vector<std::uint32_t>(rows_, 0);
  }
  std::vector<std::uint32_t> codes = column_codes_.at(columns[0]);
  distinct = column_cardinality_[columns[0]];
  std::vector<std::uint32_t> dense;
  for (std::size_t k = 1; k < columns.size(); ++k) {
    const auto& next = column_codes_.at(columns[k]);
    const std::uint64_t radix = column_cardinality_[columns[k]];
    const std::uint64_t space = static_cast<std::uint64_t>(distinct) * radix;
    std::uint32_t fresh = 0;
    if (space <= 4 * rows_ + 1024) {
      dense.assign(space, UINT32_MAX);
      for (std::size_t r = 0; r < rows_; ++r) {
        auto& slot = dense[codes[r] * radix + next[r]];
        if (slot == UINT32_MAX) slot = fresh++;
        codes[r] = slot;
      }
    } else {
      std::unordered_map<std::uint64_t, std::uint32_t> ids;
      ids.reserve(rows_);
      for (std::size_t r = 0; r < rows_; ++r) {
        auto [it, inserted] = ids.try_emplace(codes[r] * radix + next[r], fresh);
        if (inserted) ++fresh;
        codes[r] = it->second;
      }
    }
    distinct = fresh;
  }
  return codes;
}

double TupleEncoder::entropy(std::span<const std::size_t> columns) const {
  std::size_t distinct = 0;
  auto codes = encode(columns, distinct);
  return entropy_of_codes(codes, distinct);
}

double entropy(const ColumnTable& t) {
  if (t.row_count() == 0) throw std::invalid_argument("entropy of an empty table is undefined");
  std::vector<std::size_t> all(t.column_count());
  std::iota(all.begin(), all.end(), 0);
  return TupleEncoder(t).entropy(all);
}

double nmi(const TupleEncoder& enc, const IndexPartition& p) {
  const std::size_t n = enc.row_count();
  if (n < 2) throw std::invalid_argument("nmi needs at least two rows");
  std::vector<std::size_t> all(p.left);
  all.insert(all.end(), p.right.begin(), p.right.end());
  std::sort(all.begin(), all.end());
  const double joint = enc.entropy(all);
  const double value =
      (enc.entropy(p.left) + enc.entropy(p.right) - joint) / std::log2(static_cast<double>(n));
  return std::clamp(value, 0.0, 1.0);
}

double nmi(const ColumnTable& t, const IndexPartition& p) {
  if (p.axis != Axis::kColumns || !p.is_valid(t.column_count())) {
    throw std::invalid_argument("nmi needs a column partition of the table");
  }
  return nmi(TupleEncoder(t), p);
}

double nmi_sensitivity(std::size_t n) {
  if (n < 2) throw std::invalid_argument("nmi_sensitivity needs n >= 2");
  const double dn = static_cast<double>(n);
  const double log_n = std::log2(dn);
  const double dh = (2.0 / dn) * log_n + 2.0 / (dn * std::log(2.0));
  return std::min(3.0, 3.0 * dh / log_n);
}

}  // namespace dpsynth
