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
#include "dpsynth/schema.h"

#include <cmath>
#include <fstream>
#include <set>

#include "dpsynth/error.h"

namespace dpsynth {

std::string_view to_string(AttributeKind kind) {
  switch (kind) {
    case AttributeKind::kCategorical:
      return "categorical";
    case AttributeKind::kInteger:
      return "integer";
    case AttributeKind::kReal:
      return "real";
  }
  return "?";
}

std::string_view to_string(KeyRole role) {
  switch (role) {
    case KeyRole::kPlain:
      return "plain";
    case KeyRole::kPrimaryKey:
      return "primary_key";
    case KeyRole::kForeignKey:
      return "foreign_key";
  }
  return "?";
}

bool AttributeSpec::contains(double value) const {
  if (!std::isfinite(value)) return false;
  switch (kind) {
    case AttributeKind::kCategorical:
      return value >= 0 && value < static_cast<double>(categories.size()) &&
             std::floor(value) == value;
    case AttributeKind::kInteger:
      return value >= lo && value <= hi && std::floor(value) == value;
    case AttributeKind::kReal:
      return value >= lo && value <= hi;
  }
  return false;
}

std::optional<std::size_t> AttributeSpec::code_of(std::string_view label) const {
  for (std::size_t i = 0; i < categories.size(); ++i) {
    if (categories[i] == label) return i;
  }
  return std::nullopt;
}

std::optional<std::size_t> TableSchema::index_of(std::string_view attribute) const {
  for (std::size_t i = 0; i < attributes.size(); ++i) {
    if (attributes[i].name == attribute) return i;
  }
  return std::nullopt;
}

const AttributeSpec& TableSchema::attribute(std::string_view attr) const {
  auto idx = index_of(attr);
  if (!idx) {
    throw DataError("table '" + name + "' has no attribute '" +
                    std::string(attr) + "'");
  }
  return attributes[*idx];
}

std::optional<std::size_t> TableSchema::primary_key_index() const {
  for (std::size_t i = 0; i < attributes.size(); ++i) {
    if (attributes[i].role == KeyRole::kPrimaryKey) return i;
  }
  return std::nullopt;
}

std::vector<std::size_t> TableSchema::foreign_key_indices() const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < attributes.size(); ++i) {
    if (attributes[i].role == KeyRole::kForeignKey) out.push_back(i);
  }
  return out;
}

std::vector<std::size_t> TableSchema::model_attribute_indices() const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < attributes.size(); ++i) {
    if (!attributes[i].is_key()) out.push_back(i);
  }
  return out;
}

const TableSchema& DatabaseSchema::table(std::string_view name) const {
  auto idx = index_of(name);
  if (!idx) throw DataError("unknown table '" + std::string(name) + "'");
  return tables[*idx];
}

std::optional<std::size_t> DatabaseSchema::index_of(std::string_view name) const {
  for (std::size_t i = 0; i < tables.size(); ++i) {
    if (tables[i].name == name) return i;
  }
  return std::nullopt;
}

std::vector<ForeignKeyEdge> DatabaseSchema::foreign_key_edges() const {
  std::vector<ForeignKeyEdge> edges;
  for (const auto& t : tables) {
    for (std::size_t i : t.foreign_key_indices()) {
      edges.push_back({t.name, t.attributes[i].name, t.attributes[i].fk_target});
    }
  }
  return edges;
}

void DatabaseSchema::validate() const {
  if (tables.empty()) throw DataError("schema declares no tables");
  std::set<std::string> table_names;
  int primaries = 0;
  for (const auto& t : tables) {
    if (t.name.empty()) throw DataError("table with empty name");
    if (!table_names.insert(t.name).second) {
      throw DataError("duplicate table '" + t.name + "'");
    }
    if (t.is_primary_private) ++primaries;
    if (t.max_multiplicity < 1) {
      throw DataError("table '" + t.name + "': max_multiplicity must be >= 1");
    }
    if (t.attributes.empty()) {
      throw DataError("table '" + t.name + "' declares no attributes");
    }
    std::set<std::string> attr_names;
    int pks = 0;
    for (const auto& a : t.attributes) {
      const std::string where = "attribute '" + t.name + "." + a.name + "'";
      if (a.name.empty()) throw DataError("table '" + t.name + "': empty attribute name");
      if (!attr_names.insert(a.name).second) throw DataError("duplicate " + where);
      if (a.kind == AttributeKind::kCategorical) {
        if (a.categories.empty()) throw DataError(where + ": empty categorical domain");
        std::set<std::string> seen(a.categories.begin(), a.categories.end());
        if (seen.size() != a.categories.size()) {
          throw DataError(where + ": duplicate categorical value");
        }
      } else {
        if (!(a.lo <= a.hi)) throw DataError(where + ": domain requires lo <= hi");
      }
      if (a.is_key() && a.kind != AttributeKind::kInteger) {
        throw DataError(where + ": key attributes must be integer");
      }
      if (a.role == KeyRole::kPrimaryKey) ++pks;
    }
    if (pks > 1) throw DataError("table '" + t.name + "' has more than one primary key");
  }
  if (primaries != 1) {
    throw DataError("exactly one table must be primary_private, found " +
                    std::to_string(primaries));
  }
  for (const auto& t : tables) {
    for (const auto& a : t.attributes) {
      if (a.role != KeyRole::kForeignKey) continue;
      auto target = index_of(a.fk_target);
      if (!target) {
        throw DataError("foreign key '" + t.name + "." + a.name +
                        "' targets unknown table '" + a.fk_target + "'");
      }
      if (!tables[*target].primary_key_index()) {
        throw DataError("foreign key '" + t.name + "." + a.name + "' targets '" +
                        a.fk_target + "', which has no primary key");
      }
    }
  }
}

namespace {

AttributeKind parse_kind(const std::string& s) {
  if (s == "categorical") return AttributeKind::kCategorical;
  if (s == "integer") return AttributeKind::kInteger;
  if (s == "real") return AttributeKind::kReal;
  throw DataError("unknown attribute kind '" + s + "'");
}

KeyRole parse_role(const std::string& s) {
  if (s == "plain") return KeyRole::kPlain;
  if (s == "primary_key" || s == "primary-key") return KeyRole::kPrimaryKey;
  if (s == "foreign_key" || s == "foreign-key") return KeyRole::kForeignKey;
  throw DataError("unknown attribute role '" + s + "'");
}

}  // namespace

AttributeSpec attribute_from_json(const nlohmann::json& j) {
  try {
    AttributeSpec a;
    a.name = j.at("name").get<std::string>();
    a.kind = parse_kind(j.at("kind").get<std::string>());
    a.role = parse_role(j.value("role", std::string("plain")));
    if (a.role == KeyRole::kForeignKey) a.fk_target = j.at("fk_target").get<std::string>();
    if (a.kind == AttributeKind::kCategorical) {
      a.categories = j.at("domain").get<std::vector<std::string>>();
    } else if (j.contains("domain")) {
      const auto& d = j.at("domain");
      if (!d.is_array() || d.size() != 2) {
        throw DataError("attribute '" + a.name + "': numeric domain must be [lo, hi]");
      }
      a.lo = d[0].get<double>();
      a.hi = d[1].get<double>();
    } else if (a.is_key()) {
      a.lo = -kMaxExactInteger;
      a.hi = kMaxExactInteger;
    } else {
      throw DataError("attribute '" + a.name + "' has no domain");
    }
    return a;
  } catch (const nlohmann::json::exception& e) {
    throw DataError(std::string("malformed attribute: ") + e.what());
  }
}

nlohmann::json attribute_to_json(const AttributeSpec& a) {
  nlohmann::json j;
  j["name"] = a.name;
  j["kind"] = std::string(to_string(a.kind));
  if (a.kind == AttributeKind::kCategorical) {
    j["domain"] = a.categories;
  } else {
    j["domain"] = {a.lo, a.hi};
  }
  j["role"] = std::string(to_string(a.role));
  if (a.role == KeyRole::kForeignKey) j["fk_target"] = a.fk_target;
  return j;
}

DatabaseSchema schema_from_json(const nlohmann::json& j) {
  DatabaseSchema schema;
  try {
    for (const auto& jt : j.at("tables")) {
      TableSchema t;
      t.name = jt.at("name").get<std::string>();
      t.is_primary_private = jt.value("primary_private", false);
      t.max_multiplicity = jt.value("max_multiplicity", 1);
      for (const auto& ja : jt.at("attributes")) {
        t.attributes.push_back(attribute_from_json(ja));
      }
      schema.tables.push_back(std::move(t));
    }
  } catch (const nlohmann::json::exception& e) {
    throw DataError(std::string("malformed schema: ") + e.what());
  }
  schema.validate();
  return schema;
}

nlohmann::json schema_to_json(const DatabaseSchema& schema) {
  nlohmann::json tables = nlohmann::json::array();
  for (const auto& t : schema.tables) {
    nlohmann::json jt;
    jt["name"] = t.name;
    jt["primary_private"] = t.is_primary_private;
    jt["max_multiplicity"] = t.max_multiplicity;
    jt["attributes"] = nlohmann::json::array();
    for (const auto& a : t.attributes) jt["attributes"].push_back(attribute_to_json(a));
    tables.push_back(std::move(jt));
  }
  return {{"tables", tables}};
}

DatabaseSchema load_schema(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open schema file '" + path + "'");
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw DataError("schema file '" + path + "' is not valid JSON: " + e.what());
  }
  return schema_from_json(j);
}

}  // namespace dpsynth
