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
// Shared test data builders and brute-force oracles.
#ifndef DPSYNTH_TESTS_COMMON_FIXTURES_H_
#define DPSYNTH_TESTS_COMMON_FIXTURES_H_

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <map>
#include <random>
#include <string>
#include <vector>

#include "dpsynth/query.h"
#include "dpsynth/schema.h"
#include "dpsynth/table.h"

namespace dpsynth::testing {

// Scratch directory removed on destruction.
class TempDir {
 public:
  TempDir() {
    static int counter = 0;
    std::random_device rd;
    path_ = std::filesystem::temp_directory_path() /
            ("dpsynth_test_" + std::to_string(rd()) + "_" + std::to_string(counter++));
    std::filesystem::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  const std::filesystem::path& path() const { return path_; }
  std::string str() const { return path_.string(); }
  std::string file(const std::string& name) const { return (path_ / name).string(); }

 private:
  std::filesystem::path path_;
};

inline AttributeSpec categorical(std::string name, std::vector<std::string> categories) {
  AttributeSpec a;
  a.name = std::move(name);
  a.kind = AttributeKind::kCategorical;
  a.categories = std::move(categories);
  return a;
}

inline AttributeSpec integer(std::string name, double lo, double hi) {
  AttributeSpec a;
  a.name = std::move(name);
  a.kind = AttributeKind::kInteger;
  a.lo = lo;
  a.hi = hi;
  return a;
}

inline AttributeSpec real(std::string name, double lo, double hi) {
  AttributeSpec a = integer(std::move(name), lo, hi);
  a.kind = AttributeKind::kReal;
  return a;
}

inline AttributeSpec primary_key(std::string name) {
  AttributeSpec a = integer(std::move(name), -kMaxExactInteger, kMaxExactInteger);
  a.role = KeyRole::kPrimaryKey;
  return a;
}

inline AttributeSpec foreign_key(std::string name, std::string target) {
  AttributeSpec a = integer(std::move(name), -kMaxExactInteger, kMaxExactInteger);
  a.role = KeyRole::kForeignKey;
  a.fk_target = std::move(target);
  return a;
}

inline TableSchema table_schema(std::string name, std::vector<AttributeSpec> attrs,
                                bool primary = false, int tau = 1) {
  TableSchema t;
  t.name = std::move(name);
  t.attributes = std::move(attrs);
  t.is_primary_private = primary;
  t.max_multiplicity = tau;
  return t;
}

// Row-major convenience constructor.
inline ColumnTable make_table(const TableSchema& schema, const std::vector<std::vector<double>>& rows) {
  std::vector<std::vector<double>> cols(schema.attributes.size());
  for (const auto& r : rows) {
    for (std::size_t c = 0; c < cols.size(); ++c) cols[c].push_back(r.at(c));
  }
  return ColumnTable(schema, std::move(cols), rows.size());
}

// The household / member example: household(h_id, rooms in [1, 10]) and
// member(id, sex in [0, 1], age in [1, 100], h_id -> household).
inline Database household_db() {
  Database db;
  db.schema.tables.push_back(
      table_schema("household", {primary_key("h_id"), integer("rooms", 1, 10)}, true, 1));
  db.schema.tables.push_back(table_schema(
      "member",
      {primary_key("id"), integer("sex", 0, 1), integer("age", 1, 100), foreign_key("h_id", "household")},
      false, 3));
  db.tables.push_back(make_table(db.schema.tables[0], {{1, 2}, {2, 5}, {3, 3}}));
  db.tables.push_back(make_table(db.schema.tables[1], {{1, 1, 27, 1},
                                                       {2, 0, 25, 1},
                                                       {3, 0, 30, 2},
                                                       {4, 1, 32, 2},
                                                       {5, 0, 5, 2},
                                                       {6, 1, 46, 3}}));
  return db;
}

// Random non-key attribute with a small domain.
inline AttributeSpec random_attribute(std::mt19937_64& g, const std::string& name) {
  switch (std::uniform_int_distribution<int>(0, 2)(g)) {
    case 0: {
      const int k = std::uniform_int_distribution<int>(1, 5)(g);
      std::vector<std::string> cats;
      for (int i = 0; i < k; ++i) cats.push_back("v" + std::to_string(i));
      return categorical(name, cats);
    }
    case 1: {
      const double lo = std::uniform_int_distribution<int>(-5, 5)(g);
      return integer(name, lo, lo + std::uniform_int_distribution<int>(0, 12)(g));
    }
    default:
      return real(name, 0.0, std::uniform_int_distribution<int>(0, 1)(g) ? 1.0 : 100.0);
  }
}

inline double random_value(std::mt19937_64& g, const AttributeSpec& a) {
  switch (a.kind) {
    case AttributeKind::kCategorical:
      return std::uniform_int_distribution<std::size_t>(0, a.categories.size() - 1)(g);
    case AttributeKind::kInteger:
      return std::uniform_int_distribution<long long>(static_cast<long long>(a.lo),
                                                      static_cast<long long>(a.hi))(g);
    case AttributeKind::kReal:
      return std::uniform_real_distribution<double>(a.lo, a.hi)(g);
  }
  return 0.0;
}

// A single table of the given shape; values follow one of two latent
// clusters so that splits have something to find.
inline ColumnTable random_table(std::mt19937_64& g, std::size_t rows, std::size_t attrs,
                                const std::string& name = "t") {
  std::vector<AttributeSpec> specs;
  for (std::size_t a = 0; a < attrs; ++a) specs.push_back(random_attribute(g, "a" + std::to_string(a)));
  TableSchema schema = table_schema(name, specs, true, 1);
  std::vector<std::vector<double>> cols(attrs);
  std::bernoulli_distribution coin(0.5);
  for (std::size_t r = 0; r < rows; ++r) {
    const bool cluster = coin(g);
    for (std::size_t a = 0; a < attrs; ++a) {
      const AttributeSpec& s = specs[a];
      double v = random_value(g, s);
      if (cluster && coin(g)) v = s.kind == AttributeKind::kCategorical ? 0.0 : s.lo;
      cols[a].push_back(v);
    }
  }
  return ColumnTable(schema, std::move(cols), rows);
}

// parent(pk, attrs...) and child(pk, attrs..., fk -> parent) with random
// shapes; every child row references an existing parent key.
inline Database random_two_table_db(std::mt19937_64& g, std::size_t max_parent_rows,
                                    std::size_t max_child_rows) {
  Database db;
  const std::size_t pa = std::uniform_int_distribution<std::size_t>(0, 3)(g);
  const std::size_t ca = std::uniform_int_distribution<std::size_t>(0, 3)(g);
  std::vector<AttributeSpec> pspec{primary_key("pid")};
  for (std::size_t a = 0; a < pa; ++a) pspec.push_back(random_attribute(g, "p" + std::to_string(a)));
  std::vector<AttributeSpec> cspec{primary_key("cid")};
  for (std::size_t a = 0; a < ca; ++a) cspec.push_back(random_attribute(g, "c" + std::to_string(a)));
  cspec.push_back(foreign_key("pid", "parent"));
  db.schema.tables.push_back(table_schema("parent", pspec, true, 1));
  db.schema.tables.push_back(
      table_schema("child", cspec, false, std::uniform_int_distribution<int>(1, 4)(g)));

  const std::size_t np = std::uniform_int_distribution<std::size_t>(1, max_parent_rows)(g);
  const std::size_t nc = std::uniform_int_distribution<std::size_t>(0, max_child_rows)(g);
  std::vector<double> keys(np);
  for (std::size_t i = 0; i < np; ++i) keys[i] = 100.0 + 7.0 * static_cast<double>(i);
  std::shuffle(keys.begin(), keys.end(), g);
  std::vector<std::vector<double>> prows, crows;
  for (std::size_t i = 0; i < np; ++i) {
    std::vector<double> r{keys[i]};
    for (std::size_t a = 1; a < pspec.size(); ++a) r.push_back(random_value(g, pspec[a]));
    prows.push_back(r);
  }
  std::uniform_int_distribution<std::size_t> pick(0, np - 1);
  for (std::size_t i = 0; i < nc; ++i) {
    std::vector<double> r{static_cast<double>(i + 1)};
    for (std::size_t a = 1; a + 1 < cspec.size(); ++a) r.push_back(random_value(g, cspec[a]));
    r.push_back(keys[pick(g)]);
    crows.push_back(r);
  }
  db.tables.push_back(make_table(db.schema.tables[0], prows));
  db.tables.push_back(make_table(db.schema.tables[1], crows));
  return db;
}

// root <- mid <- leaf plus side -> root, with at most total_rows rows overall.
inline Database random_join_db(std::mt19937_64& g, std::size_t total_rows) {
  Database db;
  auto attr = [&](const std::string& n) { return integer(n, 0, std::uniform_int_distribution<int>(1, 4)(g)); };
  db.schema.tables.push_back(table_schema("root", {primary_key("id"), attr("x")}, true, 1));
  db.schema.tables.push_back(
      table_schema("mid", {primary_key("id"), attr("y"), foreign_key("root_id", "root")}, false, 5));
  db.schema.tables.push_back(
      table_schema("leaf", {primary_key("id"), attr("z"), foreign_key("mid_id", "mid")}, false, 5));
  db.schema.tables.push_back(
      table_schema("side", {primary_key("id"), attr("w"), foreign_key("root_id", "root")}, false, 5));
  std::vector<std::size_t> sizes(4, 0);
  std::uniform_int_distribution<std::size_t> share(0, total_rows / 4);
  for (auto& s : sizes) s = share(g);
  sizes[0] = std::max<std::size_t>(sizes[0], 1);
  sizes[1] = std::max<std::size_t>(sizes[1], sizes[2] > 0 ? 1 : 0);
  std::vector<std::vector<std::vector<double>>> rows(4);
  for (std::size_t t = 0; t < 4; ++t) {
    const TableSchema& ts = db.schema.tables[t];
    for (std::size_t i = 0; i < sizes[t]; ++i) {
      std::vector<double> r{static_cast<double>(i + 1), random_value(g, ts.attributes[1])};
      if (ts.attributes.size() == 3) {
        const std::size_t parent = t == 2 ? 1 : 0;
        r.push_back(static_cast<double>(
            std::uniform_int_distribution<std::size_t>(1, sizes[parent])(g)));
      }
      rows[t].push_back(r);
    }
    db.tables.push_back(make_table(ts, rows[t]));
  }
  return db;
}

// A connected table subset of random_join_db plus 0-3 random predicates.
inline ConjunctiveQuery random_join_query(std::mt19937_64& g, const Database& db) {
  static const std::vector<std::vector<std::string>> kSets = {
      {"root"}, {"mid"}, {"leaf"}, {"side"}, {"root", "mid"}, {"mid", "leaf"}, {"side", "root"},
      {"root", "mid", "leaf"}, {"mid", "root", "side"}, {"leaf", "mid", "root", "side"}};
  ConjunctiveQuery q;
  q.tables = kSets[std::uniform_int_distribution<std::size_t>(0, kSets.size() - 1)(g)];
  const int preds = std::uniform_int_distribution<int>(0, 3)(g);
  for (int k = 0; k < preds; ++k) {
    Predicate p;
    p.table = q.tables[std::uniform_int_distribution<std::size_t>(0, q.tables.size() - 1)(g)];
    const TableSchema& ts = db.schema.table(p.table);
    const AttributeSpec& a = ts.attributes[1];
    p.attribute = a.name;
    p.op = static_cast<CompareOp>(std::uniform_int_distribution<int>(0, 4)(g));
    p.value = std::uniform_int_distribution<int>(static_cast<int>(a.lo), static_cast<int>(a.hi))(g);
    q.predicates.push_back(p);
  }
  return q;
}

// Nested-loop COUNT(*): enumerates every combination of rows of the query's
// tables and checks join equalities and predicates directly.
inline std::uint64_t nested_loop_count(const ConjunctiveQuery& q, const Database& db) {
  std::vector<const ColumnTable*> ts;
  for (const auto& n : q.tables) ts.push_back(&db.table(n));
  std::vector<std::size_t> row(ts.size(), 0);
  std::uint64_t count = 0;
  std::function<void(std::size_t)> rec = [&](std::size_t depth) {
    if (depth == ts.size()) {
      for (const auto& p : q.predicates) {
        const std::size_t t = std::find(q.tables.begin(), q.tables.end(), p.table) - q.tables.begin();
        if (!p.matches(ts[t]->column(p.attribute)[row[t]])) return;
      }
      for (std::size_t c = 0; c < ts.size(); ++c) {
        for (const auto& a : ts[c]->schema().attributes) {
          if (a.role != KeyRole::kForeignKey) continue;
          const auto p = std::find(q.tables.begin(), q.tables.end(), a.fk_target);
          if (p == q.tables.end()) continue;
          const std::size_t pi = p - q.tables.begin();
          const auto pk = *ts[pi]->schema().primary_key_index();
          if (ts[c]->column(a.name)[row[c]] != ts[pi]->at(row[pi], pk)) return;
        }
      }
      ++count;
      return;
    }
    for (std::size_t r = 0; r < ts[depth]->row_count(); ++r) {
      row[depth] = r;
      rec(depth + 1);
    }
  };
  rec(0);
  return count;
}

// Entropy (bits) by counting full tuples in an ordered map.
inline double brute_entropy(const ColumnTable& t, const std::vector<std::size_t>& cols) {
  std::map<std::vector<double>, double> freq;
  for (std::size_t r = 0; r < t.row_count(); ++r) {
    std::vector<double> key;
    for (std::size_t c : cols) key.push_back(t.at(r, c));
    freq[key] += 1.0;
  }
  const double n = static_cast<double>(t.row_count());
  double h = 0.0;
  for (const auto& [k, c] : freq) h -= c / n * std::log2(c / n);
  return h;
}

inline double brute_nmi(const ColumnTable& t, const IndexPartition& p) {
  std::vector<std::size_t> all(t.column_count());
  for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
  return (brute_entropy(t, p.left) + brute_entropy(t, p.right) - brute_entropy(t, all)) /
         std::log2(static_cast<double>(t.row_count()));
}

// Binary table number code over rows x cols cells.
inline ColumnTable binary_table(std::size_t rows, std::size_t cols, std::uint64_t code) {
  std::vector<AttributeSpec> specs;
  for (std::size_t c = 0; c < cols; ++c) specs.push_back(integer("b" + std::to_string(c), 0, 1));
  std::vector<std::vector<double>> data(cols, std::vector<double>(rows));
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < cols; ++c) data[c][r] = static_cast<double>((code >> (r * cols + c)) & 1);
  }
  return ColumnTable(table_schema("bin", specs, true, 1), std::move(data), rows);
}

// Four attributes driven by a latent fair coin: two categorical, two small
// integers. Within a cluster attributes are independent.
inline ColumnTable two_cluster_table(std::size_t rows, std::uint64_t seed) {
  std::mt19937_64 g(seed);
  TableSchema schema = table_schema(
      "clusters",
      {categorical("color", {"red", "green", "blue", "black"}), integer("size", 0, 7),
       categorical("shape", {"round", "square", "flat"}), integer("weight", 1, 6)},
      true, 1);
  std::vector<std::vector<double>> cols(4);
  std::bernoulli_distribution coin(0.5);
  for (std::size_t r = 0; r < rows; ++r) {
    const bool c = coin(g);
    const std::vector<double> color_w = c ? std::vector<double>{6, 3, 1, 0} : std::vector<double>{0, 1, 3, 6};
    const std::vector<double> size_w = c ? std::vector<double>{4, 4, 2, 1, 0, 0, 0, 0}
                                         : std::vector<double>{0, 0, 0, 0, 1, 2, 4, 4};
    const std::vector<double> shape_w = c ? std::vector<double>{7, 2, 1} : std::vector<double>{1, 2, 7};
    const std::vector<double> weight_w = c ? std::vector<double>{5, 4, 1, 0, 0, 0}
                                           : std::vector<double>{0, 0, 0, 1, 4, 5};
    auto draw = [&](const std::vector<double>& w) {
      return static_cast<double>(std::discrete_distribution<int>(w.begin(), w.end())(g));
    };
    cols[0].push_back(draw(color_w));
    cols[1].push_back(draw(size_w));
    cols[2].push_back(draw(shape_w));
    cols[3].push_back(1.0 + draw(weight_w));
  }
  return ColumnTable(schema, std::move(cols), rows);
}

inline Database single_table_db(ColumnTable t) {
  Database db;
  db.schema.tables.push_back(t.schema());
  db.tables.push_back(std::move(t));
  return db;
}

}  // namespace dpsynth::testing

#endif  // DPSYNTH_TESTS_COMMON_FIXTURES_H_
