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
#include "dpsynth/entropy.h"
#include "dpsynth/error.h"
#include "dpsynth/split.h"

namespace dpsynth {
namespace {

using testing::integer;
using testing::real;
using testing::table_schema;

// Two Gaussian blobs in [0, 100]^2, centres 50 apart, spread 5.
ColumnTable blobs(std::uint64_t seed, std::vector<int>& truth) {
  std::mt19937_64 g(seed);
  std::normal_distribution<double> noise(0.0, 5.0);
  std::vector<std::vector<double>> cols(2);
  truth.clear();
  for (int r = 0; r < 200; ++r) {
    const int label = r % 2;
    const double c = label ? 75.0 : 25.0;
    for (auto& col : cols) col.push_back(std::clamp(c + noise(g), 0.0, 100.0));
    truth.push_back(label);
  }
  return ColumnTable(table_schema("blobs", {real("x", 0, 100), real("y", 0, 100)}, true),
                     std::move(cols), 200);
}

// Plain Lloyd with the same normalized L1 distance, random half initialisation.
std::vector<int> lloyd(const ColumnTable& t, std::uint64_t seed) {
  const std::size_t n = t.row_count();
  std::vector<int> label(n, 1);
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::mt19937_64 g(seed);
  std::shuffle(order.begin(), order.end(), g);
  for (std::size_t k = 0; k < n / 2; ++k) label[order[k]] = 0;
  for (int it = 0; it < 20; ++it) {
    double c[2][2] = {{0, 0}, {0, 0}};
    double cnt[2] = {0, 0};
    for (std::size_t r = 0; r < n; ++r) {
      for (int d = 0; d < 2; ++d) c[label[r]][d] += t.at(r, d) / 100.0;
      cnt[label[r]] += 1;
    }
    for (int k = 0; k < 2; ++k) {
      for (int d = 0; d < 2; ++d) c[k][d] /= std::max(1.0, cnt[k]);
    }
    for (std::size_t r = 0; r < n; ++r) {
      double dist[2] = {0, 0};
      for (int k = 0; k < 2; ++k) {
        for (int d = 0; d < 2; ++d) dist[k] += std::fabs(t.at(r, d) / 100.0 - c[k][d]);
      }
      label[r] = dist[1] < dist[0] ? 1 : 0;
    }
  }
  return label;
}

double agreement(const IndexPartition& p, const std::vector<int>& labels) {
  std::size_t same = 0;
  for (std::size_t r : p.right) same += labels[r] == 1;
  for (std::size_t r : p.left) same += labels[r] == 0;
  const double a = static_cast<double>(same) / static_cast<double>(labels.size());
  return std::max(a, 1.0 - a);
}

TEST(RowSplit, RecoversWellSeparatedClustersLikeLloyd) {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    std::vector<int> truth;
    ColumnTable t = blobs(seed, truth);
    const std::vector<int> oracle = lloyd(t, seed);
    RngStream rng(seed, "row_split");
    IndexPartition p = row_split(t, {1e6}, {5, 10}, rng);
    EXPECT_GE(agreement(p, oracle), 0.95) << "seed " << seed;
    EXPECT_GE(agreement(p, truth), 0.95) << "seed " << seed;
  }
}

TEST(RowSplit, CategoricalClusters) {
  std::mt19937_64 g(3);
  TableSchema s = table_schema("c", {testing::categorical("a", {"p", "q", "r", "s"}),
                                     testing::categorical("b", {"p", "q", "r", "s"})},
                               true);
  std::vector<std::vector<double>> cols(2);
  std::vector<int> truth;
  for (int r = 0; r < 400; ++r) {
    const int label = r % 2;
    for (auto& col : cols) col.push_back(label * 2 + std::uniform_int_distribution<int>(0, 1)(g));
    truth.push_back(label);
  }
  ColumnTable t(s, std::move(cols), 400);
  RngStream rng(3, "rs");
  EXPECT_GE(agreement(row_split(t, {1e6}, {5, 10}, rng), truth), 0.95);
}

TEST(RowSplit, SidesRespectMinimumSizeForAnyNoise) {
  std::mt19937_64 g(7);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t beta = std::uniform_int_distribution<std::size_t>(1, 20)(g);
    const std::size_t n = std::uniform_int_distribution<std::size_t>(2 * beta, 6 * beta + 5)(g);
    ColumnTable t = testing::random_table(g, n, std::uniform_int_distribution<std::size_t>(1, 4)(g));
    const double eps = std::pow(10.0, std::uniform_real_distribution<double>(-3, 6)(g));
    RngStream rng(trial, "rs");
    IndexPartition p = row_split(t, {eps}, {std::uniform_int_distribution<int>(1, 6)(g), beta}, rng);
    ASSERT_TRUE(p.is_valid(n));
    ASSERT_EQ(p.axis, Axis::kRows);
    ASSERT_GE(std::min(p.left.size(), p.right.size()), beta);
  }
}

TEST(RowSplit, DeterministicAndChargesExactBudget) {
  std::mt19937_64 g(1);
  ColumnTable t = testing::random_table(g, 100, 3);
  RngStream a(5, "x"), b(5, "x");
  BudgetLedger ledger;
  LedgerScope scope(ledger, "t", "spn", "L");
  IndexPartition p = row_split(t, {0.7}, {5, 10}, a, &scope);
  EXPECT_EQ(p, row_split(t, {0.7}, {5, 10}, b));
  ASSERT_EQ(ledger.size(), 1u);
  EXPECT_EQ(ledger.entries()[0].mechanism, "row_split");
  EXPECT_DOUBLE_EQ(ledger.compose("t", "spn"), 0.7);
}

TEST(RowSplit, RejectsSmallTablesAndZeroBudget) {
  std::mt19937_64 g(1);
  ColumnTable t = testing::random_table(g, 19, 2);
  RngStream rng(1);
  EXPECT_THROW(row_split(t, {1.0}, {5, 10}, rng), ConfigError);
  ColumnTable ok = testing::random_table(g, 20, 2);
  EXPECT_THROW(row_split(ok, {0.0}, {5, 10}, rng), ConfigError);
  EXPECT_THROW(row_split(ok, {1.0}, {0, 10}, rng), ConfigError);
  EXPECT_DOUBLE_EQ(diff_sensitivity(3), 6.0);
}

TEST(ColSplit, TwoAttributesHaveOneCandidate) {
  std::mt19937_64 g(2);
  ColumnTable t = testing::random_table(g, 30, 2);
  for (double eps : {0.0, 0.01, 1e6}) {
    RngStream rng(static_cast<std::uint64_t>(eps * 7), "c");
    IndexPartition p = col_split(t, {eps}, rng);
    EXPECT_EQ(p.left.size(), 1u);
    EXPECT_EQ(p.right.size(), 1u);
    EXPECT_EQ(p.axis, Axis::kColumns);
  }
}

ColumnTable copies_and_coins(std::uint64_t seed) {
  std::mt19937_64 g(seed);
  std::bernoulli_distribution coin(0.5);
  std::vector<std::vector<double>> cols(4);
  for (int r = 0; r < 1000; ++r) {
    const double v = std::uniform_int_distribution<int>(0, 7)(g);
    cols[0].push_back(v);
    cols[1].push_back(v);
    cols[2].push_back(coin(g));
    cols[3].push_back(coin(g));
  }
  return ColumnTable(table_schema("cc", {integer("a", 0, 7), integer("b", 0, 7), integer("c", 0, 1),
                                         integer("d", 0, 1)},
                                  true),
                     std::move(cols), 1000);
}

TEST(ColSplit, SeparatesCopiedPairFromCoins) {
  const IndexPartition target = IndexPartition::make({0, 1}, {2, 3}, Axis::kColumns, 4);
  const IndexPartition mirrored = IndexPartition::make({2, 3}, {0, 1}, Axis::kColumns, 4);
  int eligible = 0, hit = 0;
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    ColumnTable t = copies_and_coins(seed);
    RngStream rng(seed, "cc");
    ColSplitResult r = col_split_detailed(t, {1e6}, rng);
    bool present = false;
    for (const auto& c : r.candidates) present = present || c == target || c == mirrored;
    if (!present) continue;
    ++eligible;
    hit += r.partition == target || r.partition == mirrored;
  }
  ASSERT_GT(eligible, 50);
  EXPECT_GE(static_cast<double>(hit) / eligible, 0.99);
}

TEST(ColSplit, CandidatesAreHalfSizedAndHighEpsilonPicksMinimum) {
  std::mt19937_64 g(9);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t m = std::uniform_int_distribution<std::size_t>(3, 7)(g);
    ColumnTable t = testing::random_table(g, 60, m);
    RngStream rng(trial, "c");
    ColSplitResult r = col_split_detailed(t, {1e6}, rng);
    ASSERT_EQ(r.candidates.size(), m);
    ASSERT_LT(r.chosen, m);
    for (const auto& c : r.candidates) {
      ASSERT_EQ(c.left.size(), m / 2);
      ASSERT_TRUE(c.is_valid(m));
    }
    const double best = *std::min_element(r.scores.begin(), r.scores.end());
    EXPECT_LE(r.scores[r.chosen] - best, 1e-6);
    EXPECT_NEAR(r.scores[r.chosen], nmi(t, r.partition), 1e-12);
  }
}

TEST(ColSplit, ZeroEpsilonChoosesUniformly) {
  ColumnTable t = copies_and_coins(1);
  std::vector<int> hits(4, 0);
  const int runs = 4000;
  for (int i = 0; i < runs; ++i) {
    RngStream rng(i, "u");
    ++hits[col_split_detailed(t, {0.0}, rng).chosen];
  }
  const double se = std::sqrt(0.25 * 0.75 / runs);
  for (int h : hits) EXPECT_NEAR(static_cast<double>(h) / runs, 0.25, 4 * se);
}

TEST(ColSplit, ChargesExactBudget) {
  std::mt19937_64 g(3);
  for (std::size_t m : {2u, 3u, 5u}) {
    ColumnTable t = testing::random_table(g, 40, m);
    BudgetLedger ledger;
    LedgerScope scope(ledger, "t", "spn");
    RngStream rng(1);
    col_split(t, {0.3}, rng, &scope);
    EXPECT_DOUBLE_EQ(ledger.compose("t", "spn"), 0.3) << m;
  }
  ColumnTable one = testing::random_table(g, 10, 1);
  RngStream rng(1);
  EXPECT_THROW(col_split(one, {1.0}, rng), std::invalid_argument);
}

}  // namespace
}  // namespace dpsynth
