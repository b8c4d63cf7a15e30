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

#ifndef DPSYNTH_SCHEMA_H_
#define DPSYNTH_SCHEMA_H_

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

namespace dpsynth {

enum class AttributeKind { kCategorical, kInteger, kReal };
enum class KeyRole { kPlain, kPrimaryKey, kForeignKey };

std::string_view to_string(AttributeKind kind);
std::string_view to_string(KeyRole role);

// Largest magnitude an integer cell may take; cells are stored as doubles.
inline constexpr double kMaxExactInteger = 9007199254740992.0;  // 2^53

struct AttributeSpec {
  std::string name;
  AttributeKind kind = AttributeKind::kInteger;
  // Categorical domain, in code order. Cell value i denotes categories[i].
  std::vector<std::string> categories;
  // Closed numeric domain [lo, hi]. Unused for categorical attributes.
  double lo = 0.0;
  double hi = 0.0;
  KeyRole role = KeyRole::kPlain;
  // Referenced table for foreign keys.
  std::string fk_target;

  bool is_key() const { return role != KeyRole::kPlain; }
  bool is_numeric() const { return kind != AttributeKind::kCategorical; }
  // True if value lies in the declared domain (categorical: a valid code).
  bool contains(double value) const;
  // Code of a categorical label, if present.
  std::optional<std::size_t> code_of(std::string_view label) const;

  friend bool operator==(const AttributeSpec&, const AttributeSpec&) = default;
};

struct TableSchema {
  std::string name;
  std::vector<AttributeSpec> attributes;
  bool is_primary_private = false;
  // Maximum number of rows in this table that depend on one record of the
  // primary private table (tau). 1 for the primary table itself.
  int max_multiplicity = 1;

  std::optional<std::size_t> index_of(std::string_view attribute) const;
  const AttributeSpec& attribute(std::string_view name) const;
  std::optional<std::size_t> primary_key_index() const;
  std::vector<std::size_t> foreign_key_indices() const;
  // Indices of the non-key attributes, in declaration order. These are the
  // attributes sum-product networks model directly.
  std::vector<std::size_t> model_attribute_indices() const;

  friend bool operator==(const TableSchema&, const TableSchema&) = default;
};

// A PK-FK reference: child.fk_attribute -> parent's primary key.
struct ForeignKeyEdge {
  std::string child;
  std::string fk_attribute;
  std::string parent;
};

struct DatabaseSchema {
  std::vector<TableSchema> tables;

  const TableSchema& table(std::string_view name) const;
  std::optional<std::size_t> index_of(std::string_view table) const;
  std::vector<ForeignKeyEdge> foreign_key_edges() const;

  // Throws DataError when a structural invariant is violated.
  void validate() const;

  friend bool operator==(const DatabaseSchema&, const DatabaseSchema&) = default;
};

// JSON layout:
//   {"tables": [{"name", "primary_private", "max_multiplicity",
//                "attributes": [{"name", "kind", "domain", "role",
//                                "fk_target"?}]}]}
DatabaseSchema schema_from_json(const nlohmann::json& j);
nlohmann::json schema_to_json(const DatabaseSchema& schema);
AttributeSpec attribute_from_json(const nlohmann::json& j);
nlohmann::json attribute_to_json(const AttributeSpec& spec);

DatabaseSchema load_schema(const std::string& path);

}  // namespace dpsynth

#endif  // DPSYNTH_SCHEMA_H_
