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
#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "common/fixtures.h"
#include "dpsynth/error.h"
#include "dpsynth/metrics.h"
#include "dpsynth/query.h"
#include "dpsynth/workload.h"

namespace dpsynth {
namespace {

using testing::household_db;

Predicate pred(std::string table, std::string attr, CompareOp op, double v) {
  return Predicate{std::move(table), std::move(attr), op, v};
}

TEST(Predicate, Operators) {
  EXPECT_TRUE(pred("t", "a", CompareOp::kEq, 3).matches(3));
  EXPECT_FALSE(pred("t", "a", CompareOp::kLt, 3).matches(3));
  EXPECT_TRUE(pred("t", "a", CompareOp::kLe, 3).matches(3));
  EXPECT_TRUE(pred("t", "a", CompareOp::kGt, 3).matches(4));
  EXPECT_FALSE(pred("t", "a", CompareOp::kGe, 3).matches(2));
  EXPECT_EQ(compare_op_from_string(">="), CompareOp::kGe);
  EXPECT_THROW(compare_op_from_string("~"), DataError);
}

TEST(Cardinality, HouseholdExamples) {
  Database db = household_db();
  ConjunctiveQuery age{{"member"}, {pred("member", "age", CompareOp::kGe, 30)}};
  EXPECT_EQ(cardinality(age, db), 3u);
  ConjunctiveQuery join{{"household", "member"}, {}};
  EXPECT_EQ(cardinality(join, db), 6u);
  EXPECT_EQ(testing::nested_loop_count(join, db), 6u);
  ConjunctiveQuery big{{"household", "member"},
                       {pred("household", "rooms", CompareOp::kGe, 3),
                        pred("member", "sex", CompareOp::kEq, 0)}};
  EXPECT_EQ(cardinality(big, db), 2u);
}

TEST(Cardinality, EmptyTableGivesZero) {
  Database db = household_db();
  db.tables[1] = db.tables[1].select_rows(std::vector<std::size_t>{});
  ConjunctiveQuery q{{"member"}, {pred("member", "age", CompareOp::kGe, 1)}};
  EXPECT_EQ(cardinality(q, db), 0u);
  ConjunctiveQuery j{{"household", "member"}, {}};
  EXPECT_EQ(cardinality(j, db), 0u);
}

TEST(Cardinality, RejectsInvalidQueries) {
  std::mt19937_64 g(1);
  Database db = testing::random_join_db(g, 40);
  EXPECT_THROW(cardinality(ConjunctiveQuery{{"leaf", "root"}, {}}, db), DataError);
  EXPECT_THROW(cardinality(ConjunctiveQuery{{"nope"}, {}}, db), DataError);
  EXPECT_THROW(cardinality(ConjunctiveQuery{{"root"}, {pred("root", "zz", CompareOp::kEq, 1)}}, db),
               DataError);
  EXPECT_THROW(cardinality(ConjunctiveQuery{{"root"}, {pred("mid", "y", CompareOp::kEq, 1)}}, db),
               DataError);
  EXPECT_THROW(cardinality(ConjunctiveQuery{{"root", "root"}, {}}, db), DataError);
}

TEST(Cardinality, MatchesNestedLoopOracle) {
  std::mt19937_64 g(2024);
  for (int trial = 0; trial < 200; ++trial) {
    Database db = testing::random_join_db(g, 50);
    ASSERT_NO_THROW(db.validate());
    ConjunctiveQuery q = testing::random_join_query(g, db);
    ASSERT_EQ(cardinality(q, db), testing::nested_loop_count(q, db)) << to_sql(q, db.schema);
  }
}

TEST(Query, SqlAndJsonRoundTrip) {
  Database db = household_db();
  ConjunctiveQuery q{{"household", "member"},
                     {pred("household", "rooms", CompareOp::kLe, 4), pred("member", "age", CompareOp::kGt, 20)}};
  const std::string sql = to_sql(q, db.schema);
  EXPECT_NE(sql.find("\"member\".\"h_id\" = \"household\".\"h_id\""), std::string::npos) << sql;
  EXPECT_NE(sql.find("<= 4"), std::string::npos) << sql;
  EXPECT_EQ(query_from_json(query_to_json(q, db.schema), db.schema), q);

  std::vector<ConjunctiveQuery> w{q, ConjunctiveQuery{{"member"}, {}}};
  EXPECT_EQ(workload_from_json(workload_to_json(w, db.schema), db.schema), w);
}

TEST(Query, CategoricalConstantsUseLabels) {
  Database db = testing::single_table_db(ColumnTable(
      testing::table_schema("t", {testing::categorical("c", {"lo", "hi"})}, true), {{0, 1, 1}}, 3));
  ConjunctiveQuery q{{"t"}, {pred("t", "c", CompareOp::kEq, 1)}};
  nlohmann::json j = query_to_json(q, db.schema);
  EXPECT_EQ(j.dump().find("\"hi\"") != std::string::npos, true) << j.dump();
  EXPECT_EQ(query_from_json(j, db.schema), q);
  EXPECT_EQ(cardinality(q, db), 2u);
}

TEST(QError, Formula) {
  EXPECT_DOUBLE_EQ(qerror(10, 20), 2.0);
  EXPECT_DOUBLE_EQ(qerror(20, 10), 2.0);
  EXPECT_DOUBLE_EQ(qerror(7, 7), 1.0);
  EXPECT_DOUBLE_EQ(qerror(5, 0), 6.0);
  EXPECT_DOUBLE_EQ(qerror(0, 5), 6.0);
  EXPECT_DOUBLE_EQ(qerror(0, 0), 1.0);
  std::mt19937_64 g(1);
  for (int i = 0; i < 1000; ++i) {
    const auto a = g() % 1000, b = g() % 1000;
    ASSERT_EQ(qerror(a, b), qerror(b, a));
    ASSERT_GE(qerror(a, b), 1.0);
  }
}

TEST(Summary, MatchesRecomputation) {
  std::vector<double> v{1, 2, 3, 4, 10};
  SummaryStats s = summarize(v);
  EXPECT_DOUBLE_EQ(s.mean, 4.0);
  EXPECT_DOUBLE_EQ(s.median, 3.0);
  EXPECT_DOUBLE_EQ(s.p75, 4.0);
  EXPECT_DOUBLE_EQ(s.max, 10.0);
  EXPECT_EQ(s.count, 5u);
  EXPECT_DOUBLE_EQ(percentile({1, 2}, 0.5), 1.5);
  EXPECT_EQ(summarize({}).count, 0u);
}

TEST(Kld, DivergenceOfCounts) {
  EXPECT_NEAR(kl_divergence({2, 2}, {3, 1}), 0.5 * std::log(0.5 / 0.75) + 0.5 * std::log(2.0), 1e-9);
  EXPECT_NEAR(kl_divergence({1, 0, 3}, {1, 0, 3}), 0.0, 1e-12);
  EXPECT_GT(kl_divergence({1, 0}, {0, 1}), 10.0);
  EXPECT_THROW(kl_divergence({1}, {1, 2}), std::invalid_argument);
}

Database one_column(std::vector<double> v) {
  const std::size_t n = v.size();
  return testing::single_table_db(ColumnTable(
      testing::table_schema("t", {testing::categorical("c", {"a", "b"})}, true), {std::move(v)}, n));
}

TEST(Kld, WorkedExampleAndIdentity) {
  Database orig = one_column({0, 0, 1, 1});
  Database synth = one_column({0, 0, 0, 1});
  EXPECT_NEAR(kld_lambda(orig, synth, 1), 0.1438410362, 1e-8);
  EXPECT_LT(kld_lambda(orig, orig, 1), 1e-9);
  EXPECT_THROW(kld_lambda(orig, synth, 2), ConfigError);
  EXPECT_THROW(kld_lambda(orig, synth, 0), ConfigError);
}

TEST(Kld, SelfDivergenceVanishesOnRandomDatabases) {
  std::mt19937_64 g(3);
  for (int trial = 0; trial < 30; ++trial) {
    Database db = testing::random_two_table_db(g, 30, 60);
    for (std::size_t lambda = 1; lambda <= 2; ++lambda) {
      try {
        EXPECT_LT(kld_lambda(db, db, lambda), 1e-9);
      } catch (const ConfigError&) {
        // no table wide enough
      }
    }
  }
}

TEST(Kld, AveragesOverMarginalsAndSkipsNarrowTables) {
  std::mt19937_64 g(4);
  ColumnTable wide = testing::random_table(g, 100, 3, "wide");
  Database a = testing::single_table_db(wide);
  Database b = a;
  auto cols = wide.columns();
  std::reverse(cols[0].begin(), cols[0].end());
  std::reverse(cols[1].begin(), cols[1].end());
  std::rotate(cols[1].begin(), cols[1].begin() + 7, cols[1].end());
  b.tables[0] = ColumnTable(wide.schema(), cols, 100);
  // Marginal 1-way over column 0 is unchanged, so only pairs contribute.
  EXPECT_LT(kld_lambda(a, b, 1), 1e-9);
  EXPECT_GT(kld_lambda(a, b, 2), 0.0);
}

TEST(Workload, DeterministicAndWellFormed) {
  std::mt19937_64 g(6);
  Database db = testing::random_join_db(g, 50);
  auto w1 = generate_workload(db, 300, 11);
  auto w2 = generate_workload(db, 300, 11);
  EXPECT_EQ(w1, w2);
  EXPECT_NE(w1, generate_workload(db, 300, 12));
  ASSERT_EQ(w1.size(), 300u);
  bool saw_join = false;
  for (const auto& q : w1) {
    ASSERT_NO_THROW(validate_query(q, db.schema));
    ASSERT_LE(q.tables.size(), 3u);
    ASSERT_GE(q.predicates.size(), 1u);
    ASSERT_LE(q.predicates.size(), 3u);
    saw_join |= q.tables.size() > 1;
    for (const auto& p : q.predicates) {
      ASSERT_TRUE(db.schema.table(p.table).attribute(p.attribute).contains(p.value));
    }
  }
  EXPECT_TRUE(saw_join);
}

TEST(Workload, SingleTableAndCategoricalEquality) {
  Database db = testing::single_table_db(testing::two_cluster_table(500, 1));
  auto w = generate_workload(db, 1000, 7);
  EXPECT_EQ(w.size(), 1000u);
  for (const auto& q : w) {
    ASSERT_EQ(q.tables, (std::vector<std::string>{"clusters"}));
    for (const auto& p : q.predicates) {
      if (db.schema.tables[0].attribute(p.attribute).kind == AttributeKind::kCategorical) {
        ASSERT_EQ(p.op, CompareOp::kEq);
      }
    }
  }
  auto sets = joinable_table_sets(household_db().schema);
  EXPECT_EQ(sets.size(), 3u);
}

TEST(Evaluate, IdentityGivesPerfectScores) {
  std::mt19937_64 g(8);
  Database db = testing::random_join_db(g, 50);
  auto w = generate_workload(db, 100, 1);
  EvalReport r = evaluate(db, db, {1}, w, 1, 2);
  EXPECT_LT(r.kld.at(1), 1e-9);
  for (const auto& q : r.queries) EXPECT_EQ(q.qerror, 1.0);
  EXPECT_EQ(r.qerror_summary.mean, 1.0);
  nlohmann::json j = r.to_json(db.schema);
  EXPECT_EQ(j["queries"].size(), 100u);
}

TEST(Evaluate, SummaryMatchesQueryList) {
  std::mt19937_64 g(9);
  Database a = testing::random_join_db(g, 50);
  Database b = a;
  b.tables[1] = a.tables[1].select_rows(std::vector<std::size_t>{});
  b.tables[2] = ColumnTable(a.tables[2].schema(), std::vector<std::vector<double>>(3), 0);
  auto w = generate_workload(a, 200, 2);
  EvalReport r = evaluate(a, b, {1}, w);
  std::vector<double> errs;
  for (const auto& q : r.queries) errs.push_back(q.qerror);
  SummaryStats s = summarize(errs);
  EXPECT_DOUBLE_EQ(r.qerror_summary.mean, s.mean);
  EXPECT_DOUBLE_EQ(r.qerror_summary.median, s.median);
  EXPECT_DOUBLE_EQ(r.qerror_summary.p75, s.p75);
  EXPECT_DOUBLE_EQ(r.qerror_summary.max, s.max);
}

}  // namespace
}  // namespace dpsynth
