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
#include "dpsynth/query.h"

#include <algorithm>
#include <numeric>
#include <optional>
#include <queue>
#include <sstream>
#include <unordered_map>

#include "dpsynth/error.h"

namespace dpsynth {

std::string_view to_string(CompareOp op) {
  switch (op) {
    case CompareOp::kEq: return "=";
    case CompareOp::kLt: return "<";
    case CompareOp::kLe: return "<=";
    case CompareOp::kGt: return ">";
    case CompareOp::kGe: return ">=";
  }
  return "?";
}

CompareOp compare_op_from_string(std::string_view s) {
  if (s == "=" || s == "==") return CompareOp::kEq;
  if (s == "<") return CompareOp::kLt;
  if (s == "<=") return CompareOp::kLe;
  if (s == ">") return CompareOp::kGt;
  if (s == ">=") return CompareOp::kGe;
  throw DataError("unknown comparison operator '" + std::string(s) + "'");
}

bool Predicate::matches(double cell) const {
  switch (op) {
    case CompareOp::kEq: return cell == value;
    case CompareOp::kLt: return cell < value;
    case CompareOp::kLe: return cell <= value;
    case CompareOp::kGt: return cell > value;
    case CompareOp::kGe: return cell >= value;
  }
  return false;
}

std::vector<ForeignKeyEdge> join_edges(const ConjunctiveQuery& q, const DatabaseSchema& schema) {
  const std::size_t k = q.tables.size();
  if (k == 0) throw DataError("query has no tables");
  std::vector<std::string> sorted = q.tables;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
    throw DataError("query lists a table twice");
  }
  auto position = [&](std::string_view name) -> std::optional<std::size_t> {
    for (std::size_t i = 0; i < k; ++i) {
      if (q.tables[i] == name) return i;
    }
    return std::nullopt;
  };
  for (const auto& t : q.tables) {
    if (!schema.index_of(t)) throw DataError("query references unknown table '" + t + "'");
  }
  for (const auto& p : q.predicates) {
    if (!position(p.table)) {
      throw DataError("predicate on table '" + p.table + "' which the query does not join");
    }
    const TableSchema& ts = schema.table(p.table);
    const auto a = ts.index_of(p.attribute);
    if (!a) throw DataError("unknown attribute '" + p.table + "." + p.attribute + "'");
    if (!ts.attributes[*a].contains(p.value)) {
      throw DataError("predicate constant outside the domain of " + p.table + "." + p.attribute);
    }
  }

  std::vector<ForeignKeyEdge> edges;
  std::vector<std::size_t> root(k);
  std::iota(root.begin(), root.end(), 0);
  auto find = [&](std::size_t x) {
    while (root[x] != x) x = root[x] = root[root[x]];
    return x;
  };
  for (const auto& e : schema.foreign_key_edges()) {
    const auto c = position(e.child);
    const auto p = position(e.parent);
    if (!c || !p) continue;
    const std::size_t rc = find(*c);
    const std::size_t rp = find(*p);
    if (rc == rp) throw DataError("join graph of the query is cyclic");
    root[rc] = rp;
    edges.push_back(e);
  }
  if (edges.size() + 1 != k) throw DataError("join graph of the query is disconnected");
  return edges;
}

std::uint64_t cardinality(const ConjunctiveQuery& q, const Database& db) {
  const auto edges = join_edges(q, db.schema);
  const std::size_t k = q.tables.size();
  std::vector<const ColumnTable*> tables;
  for (const auto& name : q.tables) tables.push_back(&db.table(name));

  std::vector<std::vector<std::uint64_t>> weight(k);
  for (std::size_t i = 0; i < k; ++i) {
    const ColumnTable& t = *tables[i];
    weight[i].assign(t.row_count(), 1);
    for (const auto& p : q.predicates) {
      if (p.table != q.tables[i]) continue;
      auto col = t.column(p.attribute);
      for (std::size_t r = 0; r < col.size(); ++r) {
        if (!p.matches(col[r])) weight[i][r] = 0;
      }
    }
  }

  // Adjacency: (neighbor, own join column, neighbor join column).
  struct Link {
    std::size_t other;
    std::size_t own_column;
    std::size_t other_column;
  };
  std::vector<std::vector<Link>> adj(k);
  auto pos = [&](const std::string& name) {
    return static_cast<std::size_t>(std::find(q.tables.begin(), q.tables.end(), name) -
                                    q.tables.begin());
  };
  for (const auto& e : edges) {
    const std::size_t c = pos(e.child);
    const std::size_t p = pos(e.parent);
    const std::size_t fk = *tables[c]->schema().index_of(e.fk_attribute);
    const std::size_t pk = *tables[p]->schema().primary_key_index();
    adj[c].push_back({p, fk, pk});
    adj[p].push_back({c, pk, fk});
  }

  std::vector<std::size_t> order{0};
  std::vector<std::size_t> parent(k, k);
  std::vector<Link> up(k, Link{0, 0, 0});
  std::vector<char> seen(k, 0);
  seen[0] = 1;
  for (std::size_t h = 0; h < order.size(); ++h) {
    const std::size_t v = order[h];
    for (const Link& l : adj[v]) {
      if (seen[l.other]) continue;
      seen[l.other] = 1;
      parent[l.other] = v;
      up[l.other] = Link{v, l.other_column, l.own_column};
      order.push_back(l.other);
    }
  }

  for (std::size_t h = order.size(); h-- > 1;) {
    const std::size_t v = order[h];
    const Link& l = up[v];
    std::unordered_map<double, std::uint64_t> message;
    auto own = tables[v]->column(l.own_column);
    for (std::size_t r = 0; r < own.size(); ++r) {
      if (weight[v][r]) message[own[r]] += weight[v][r];
    }
    auto theirs = tables[l.other]->column(l.other_column);
    for (std::size_t r = 0; r < theirs.size(); ++r) {
      if (!weight[l.other][r]) continue;
      const auto it = message.find(theirs[r]);
      weight[l.other][r] *= it == message.end() ? 0 : it->second;
    }
  }
  return std::accumulate(weight[0].begin(), weight[0].end(), std::uint64_t{0});
}

namespace {

std::string sql_identifier(std::string_view id) {
  std::string out = "\"";
  for (char c : id) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::string literal(const AttributeSpec& spec, double value) {
  if (spec.kind == AttributeKind::kCategorical) {
    std::string out = "'";
    for (char c : spec.categories.at(static_cast<std::size_t>(value))) {
      if (c == '\'') out += '\'';
      out += c;
    }
    return out + "'";
  }
  std::ostringstream os;
  os.precision(17);
  os << value;
  return os.str();
}

nlohmann::json value_to_json(const AttributeSpec& spec, double value) {
  if (spec.kind == AttributeKind::kCategorical) {
    return spec.categories.at(static_cast<std::size_t>(value));
  }
  return value;
}

}  // namespace

std::string to_sql(const ConjunctiveQuery& q, const DatabaseSchema& schema) {
  const auto edges = join_edges(q, schema);
  std::string sql = "SELECT COUNT(*) FROM ";
  for (std::size_t i = 0; i < q.tables.size(); ++i) {
    if (i) sql += ", ";
    sql += sql_identifier(q.tables[i]);
  }
  std::vector<std::string> conditions;
  for (const auto& e : edges) {
    const TableSchema& parent = schema.table(e.parent);
    conditions.push_back(sql_identifier(e.child) + "." + sql_identifier(e.fk_attribute) + " = " +
                         sql_identifier(e.parent) + "." +
                         sql_identifier(parent.attributes[*parent.primary_key_index()].name));
  }
  for (const auto& p : q.predicates) {
    const AttributeSpec& spec = schema.table(p.table).attribute(p.attribute);
    conditions.push_back(sql_identifier(p.table) + "." + sql_identifier(p.attribute) + " " +
                         std::string(to_string(p.op)) + " " + literal(spec, p.value));
  }
  for (std::size_t i = 0; i < conditions.size(); ++i) {
    sql += i ? " AND " : " WHERE ";
    sql += conditions[i];
  }
  return sql + ";";
}

nlohmann::json query_to_json(const ConjunctiveQuery& q, const DatabaseSchema& schema) {
  nlohmann::json preds = nlohmann::json::array();
  for (const auto& p : q.predicates) {
    const AttributeSpec& spec = schema.table(p.table).attribute(p.attribute);
    preds.push_back({{"table", p.table},
                     {"attribute", p.attribute},
                     {"op", std::string(to_string(p.op))},
                     {"value", value_to_json(spec, p.value)}});
  }
  return {{"tables", q.tables}, {"predicates", preds}};
}

ConjunctiveQuery query_from_json(const nlohmann::json& j, const DatabaseSchema& schema) {
  ConjunctiveQuery q;
  try {
    q.tables = j.at("tables").get<std::vector<std::string>>();
    for (const auto& jp : j.value("predicates", nlohmann::json::array())) {
      Predicate p;
      p.table = jp.at("table").get<std::string>();
      p.attribute = jp.at("attribute").get<std::string>();
      p.op = compare_op_from_string(jp.at("op").get<std::string>());
      if (!schema.index_of(p.table)) throw DataError("unknown table '" + p.table + "'");
      const TableSchema& ts = schema.table(p.table);
      if (!ts.index_of(p.attribute)) {
        throw DataError("unknown attribute '" + p.table + "." + p.attribute + "'");
      }
      const AttributeSpec& spec = ts.attribute(p.attribute);
      const auto& v = jp.at("value");
      if (spec.kind == AttributeKind::kCategorical) {
        const auto code = spec.code_of(v.get<std::string>());
        if (!code) throw DataError("unknown category in predicate on " + p.attribute);
        p.value = static_cast<double>(*code);
      } else {
        p.value = v.get<double>();
      }
      q.predicates.push_back(std::move(p));
    }
  } catch (const nlohmann::json::exception& e) {
    throw DataError(std::string("malformed query: ") + e.what());
  }
  validate_query(q, schema);
  return q;
}

nlohmann::json workload_to_json(const std::vector<ConjunctiveQuery>& w,
                                const DatabaseSchema& schema) {
  nlohmann::json out = nlohmann::json::array();
  for (const auto& q : w) out.push_back(query_to_json(q, schema));
  return out;
}

std::vector<ConjunctiveQuery> workload_from_json(const nlohmann::json& j,
                                                 const DatabaseSchema& schema) {
  if (!j.is_array()) throw DataError("workload must be a JSON array of queries");
  std::vector<ConjunctiveQuery> out;
  out.reserve(j.size());
  for (const auto& jq : j) out.push_back(query_from_json(jq, schema));
  return out;
}

}  // namespace dpsynth
