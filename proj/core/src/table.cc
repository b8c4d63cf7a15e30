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
#include "dpsynth/table.h"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>
#include <unordered_set>

#include "dpsynth/error.h"

namespace dpsynth {

ColumnTable::ColumnTable(TableSchema schema, std::vector<std::vector<double>> columns,
                         std::size_t row_count)
    : schema_(std::move(schema)), columns_(std::move(columns)), row_count_(row_count) {
  if (columns_.size() != schema_.attributes.size()) {
    throw DataError("table '" + schema_.name + "': " + std::to_string(columns_.size()) +
                    " columns for " + std::to_string(schema_.attributes.size()) +
                    " attributes");
  }
  for (std::size_t c = 0; c < columns_.size(); ++c) {
    if (columns_[c].size() != row_count_) {
      throw DataError("table '" + schema_.name + "': column '" +
                      schema_.attributes[c].name + "' has " +
                      std::to_string(columns_[c].size()) + " cells, expected " +
                      std::to_string(row_count_));
    }
  }
}

std::span<const double> ColumnTable::column(std::string_view attribute) const {
  auto idx = schema_.index_of(attribute);
  if (!idx) {
    throw DataError("table '" + schema_.name + "' has no attribute '" +
                    std::string(attribute) + "'");
  }
  return columns_[*idx];
}

void ColumnTable::validate_domains() const {
  for (std::size_t c = 0; c < columns_.size(); ++c) {
    const auto& spec = schema_.attributes[c];
    for (std::size_t r = 0; r < row_count_; ++r) {
      if (!spec.contains(columns_[c][r])) {
        std::ostringstream msg;
        msg << "table '" << schema_.name << "': value " << columns_[c][r]
            << " at row " << r << ", column '" << spec.name
            << "' is outside the declared domain";
        throw DataError(msg.str());
      }
    }
  }
}

ColumnTable ColumnTable::select_columns(std::span<const std::size_t> indices) const {
  TableSchema s = schema_;
  s.attributes.clear();
  std::vector<std::vector<double>> cols;
  cols.reserve(indices.size());
  for (std::size_t i : indices) {
    if (i >= columns_.size()) throw std::out_of_range("column index out of range");
    s.attributes.push_back(schema_.attributes[i]);
    cols.push_back(columns_[i]);
  }
  return ColumnTable(std::move(s), std::move(cols), row_count_);
}

ColumnTable ColumnTable::select_rows(std::span<const std::size_t> rows) const {
  std::vector<std::vector<double>> cols(columns_.size());
  for (std::size_t c = 0; c < columns_.size(); ++c) {
    cols[c].reserve(rows.size());
    for (std::size_t r : rows) {
      if (r >= row_count_) throw std::out_of_range("row index out of range");
      cols[c].push_back(columns_[c][r]);
    }
  }
  return ColumnTable(schema_, std::move(cols), rows.size());
}

ColumnTable ColumnTable::model_view() const {
  auto idx = schema_.model_attribute_indices();
  return select_columns(idx);
}

IndexPartition IndexPartition::make(std::vector<std::size_t> left,
                                    std::vector<std::size_t> right, Axis axis,
                                    std::size_t size) {
  IndexPartition p{std::move(left), std::move(right), axis};
  std::sort(p.left.begin(), p.left.end());
  std::sort(p.right.begin(), p.right.end());
  if (!p.is_valid(size)) {
    throw std::invalid_argument("index partition is not a two-way split of [0, " +
                                std::to_string(size) + ")");
  }
  return p;
}

IndexPartition IndexPartition::from_left(std::vector<std::size_t> left, Axis axis,
                                         std::size_t size) {
  std::vector<bool> in_left(size, false);
  for (std::size_t i : left) {
    if (i >= size) throw std::invalid_argument("partition index out of range");
    in_left[i] = true;
  }
  std::vector<std::size_t> right;
  for (std::size_t i = 0; i < size; ++i) {
    if (!in_left[i]) right.push_back(i);
  }
  return make(std::move(left), std::move(right), axis, size);
}

bool IndexPartition::is_valid(std::size_t n) const {
  if (left.empty() || right.empty() || left.size() + right.size() != n) return false;
  std::vector<bool> seen(n, false);
  for (const auto* side : {&left, &right}) {
    for (std::size_t k = 0; k < side->size(); ++k) {
      std::size_t i = (*side)[k];
      if (i >= n || seen[i]) return false;
      if (k > 0 && (*side)[k - 1] >= i) return false;
      seen[i] = true;
    }
  }
  return true;
}

ColumnTable subtable(const ColumnTable& t, const IndexPartition& p, Side side) {
  const auto& idx = side == Side::kLeft ? p.left : p.right;
  const std::size_t extent = p.axis == Axis::kRows ? t.row_count() : t.column_count();
  for (std::size_t i : idx) {
    if (i >= extent) throw std::out_of_range("partition index out of range for table");
  }
  return p.axis == Axis::kRows ? t.select_rows(idx) : t.select_columns(idx);
}

ColumnTable concat_rows(const ColumnTable& top, const ColumnTable& bottom) {
  if (top.schema() != bottom.schema()) {
    throw std::invalid_argument("concat_rows: schemas differ");
  }
  std::vector<std::vector<double>> cols = top.columns();
  for (std::size_t c = 0; c < cols.size(); ++c) {
    auto b = bottom.column(c);
    cols[c].insert(cols[c].end(), b.begin(), b.end());
  }
  return ColumnTable(top.schema(), std::move(cols), top.row_count() + bottom.row_count());
}

ColumnTable concat_columns(const ColumnTable& left, const ColumnTable& right) {
  if (left.row_count() != right.row_count()) {
    throw std::invalid_argument("concat_columns: row counts differ");
  }
  TableSchema s = left.schema();
  for (const auto& a : right.schema().attributes) s.attributes.push_back(a);
  std::vector<std::vector<double>> cols = left.columns();
  for (const auto& c : right.columns()) cols.push_back(c);
  return ColumnTable(std::move(s), std::move(cols), left.row_count());
}

const ColumnTable& Database::table(std::string_view name) const {
  auto idx = schema.index_of(name);
  if (!idx || *idx >= tables.size()) {
    throw DataError("database has no table '" + std::string(name) + "'");
  }
  return tables[*idx];
}

std::vector<double> primary_key_values(const ColumnTable& t) {
  auto pk = t.schema().primary_key_index();
  if (!pk) return {};
  auto col = t.column(*pk);
  std::vector<double> keys(col.begin(), col.end());
  std::sort(keys.begin(), keys.end());
  return keys;
}

void Database::validate() const {
  if (tables.size() != schema.tables.size()) {
    throw DataError("database has " + std::to_string(tables.size()) +
                    " tables, schema declares " + std::to_string(schema.tables.size()));
  }
  for (std::size_t i = 0; i < tables.size(); ++i) {
    if (tables[i].schema() != schema.tables[i]) {
      throw DataError("table '" + schema.tables[i].name + "' does not match its schema");
    }
    tables[i].validate_domains();
    auto keys = primary_key_values(tables[i]);
    if (std::adjacent_find(keys.begin(), keys.end()) != keys.end()) {
      throw DataError("table '" + tables[i].name() + "': duplicate primary key value");
    }
  }
  for (const auto& edge : schema.foreign_key_edges()) {
    const auto& child = table(edge.child);
    auto keys = primary_key_values(table(edge.parent));
    auto col = child.column(edge.fk_attribute);
    for (std::size_t r = 0; r < col.size(); ++r) {
      if (!std::binary_search(keys.begin(), keys.end(), col[r])) {
        std::ostringstream msg;
        msg << "table '" << edge.child << "': foreign key " << edge.fk_attribute << " = "
            << col[r] << " at row " << r << " references no row of '" << edge.parent
            << "'";
        throw DataError(msg.str());
      }
    }
  }
}

}  // namespace dpsynth
