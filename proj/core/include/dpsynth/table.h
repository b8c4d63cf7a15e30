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
#ifndef DPSYNTH_TABLE_H_
#define DPSYNTH_TABLE_H_

#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

#include "dpsynth/schema.h"

namespace dpsynth {

// Column-major table. Categorical cells hold their domain code; numeric cells
// hold the value. Tables are immutable once built.
class ColumnTable {
 public:
  ColumnTable() = default;
  // Throws DataError if a column's length differs from row_count or the
  // column count differs from the schema's attribute count.
  ColumnTable(TableSchema schema, std::vector<std::vector<double>> columns,
              std::size_t row_count);

  const TableSchema& schema() const { return schema_; }
  const std::string& name() const { return schema_.name; }
  std::size_t row_count() const { return row_count_; }
  std::size_t column_count() const { return columns_.size(); }
  std::span<const double> column(std::size_t i) const { return columns_[i]; }
  std::span<const double> column(std::string_view attribute) const;
  const std::vector<std::vector<double>>& columns() const { return columns_; }
  double at(std::size_t row, std::size_t col) const { return columns_[col][row]; }

  // Throws DataError naming the first cell outside its declared domain.
  void validate_domains() const;

  // Same rows, only the listed columns (in the listed order).
  ColumnTable select_columns(std::span<const std::size_t> indices) const;
  // Same columns, only the listed rows (in the listed order).
  ColumnTable select_rows(std::span<const std::size_t> rows) const;
  // Restriction to the non-key attributes.
  ColumnTable model_view() const;

  friend bool operator==(const ColumnTable&, const ColumnTable&) = default;

 private:
  TableSchema schema_;
  std::vector<std::vector<double>> columns_;
  std::size_t row_count_ = 0;
};

enum class Axis { kRows, kColumns };

// A two-way split of the row or column index range [0, size).
struct IndexPartition {
  std::vector<std::size_t> left;
  std::vector<std::size_t> right;
  Axis axis = Axis::kRows;

  // Sorts both sides and checks they are non-empty, disjoint and cover
  // [0, size). Throws std::invalid_argument otherwise.
  static IndexPartition make(std::vector<std::size_t> left,
                             std::vector<std::size_t> right, Axis axis,
                             std::size_t size);
  // Left side given; right is the complement in [0, size).
  static IndexPartition from_left(std::vector<std::size_t> left, Axis axis,
                                  std::size_t size);

  std::size_t size() const { return left.size() + right.size(); }
  bool is_valid(std::size_t size) const;

  friend bool operator==(const IndexPartition&, const IndexPartition&) = default;
};

enum class Side { kLeft, kRight };

// Rows or columns on one side of the partition, in original order.
ColumnTable subtable(const ColumnTable& t, const IndexPartition& p, Side side);

// Vertical concatenation; schemas must match.
ColumnTable concat_rows(const ColumnTable& top, const ColumnTable& bottom);
// Horizontal concatenation; row counts must match.
ColumnTable concat_columns(const ColumnTable& left, const ColumnTable& right);

struct Database {
  DatabaseSchema schema;
  std::vector<ColumnTable> tables;  // parallel to schema.tables

  const ColumnTable& table(std::string_view name) const;
  // Full domain, key uniqueness and referential integrity check.
  void validate() const;

  friend bool operator==(const Database&, const Database&) = default;
};

// Sorted primary-key values of a table (empty if it has no primary key).
std::vector<double> primary_key_values(const ColumnTable& t);

}  // namespace dpsynth

#endif  // DPSYNTH_TABLE_H_
