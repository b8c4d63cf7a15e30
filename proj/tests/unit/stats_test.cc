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
#include <map>
#include <random>

#include <gtest/gtest.h>

#include "common/fixtures.h"
#include "dpsynth/entropy.h"
#include "dpsynth/error.h"
#include "dpsynth/fanout.h"
#include "dpsynth/histogram.h"

namespace dpsynth {
namespace {

using testing::binary_table;
using testing::brute_entropy;
using testing::brute_nmi;
using testing::categorical;
using testing::integer;
using testing::table_schema;

ColumnTable two_cat(std::vector<double> a, std::vector<double> b) {
  const std::size_t n = a.size();
  return ColumnTable(table_schema("t", {categorical("x", {"a", "b", "c", "d"}),
                                        categorical("y", {"a", "b", "c", "d"})},
                                  true),
                     {std::move(a), std::move(b)}, n);
}

TEST(Histogram, CategoricalCounts) {
  AttributeSpec abc = categorical("c", {"a", "b", "c"});
  std::vector<double> col{0, 0, 1};
  Histogram h = build_histogram(abc, col);
  EXPECT_EQ(h.counts, (std::vector<double>{2, 1, 0}));
  EXPECT_EQ(h.total(), 3.0);
  std::vector<double> none;
  EXPECT_EQ(build_histogram(abc, none).counts, (std::vector<double>{0, 0, 0}));
}

TEST(Histogram, SmallIntegerDomainOneBinPerValue) {
  AttributeSpec rooms = integer("rooms", 1, 10);
  std::vector<double> col{1, 5, 10};
  Histogram h = build_histogram(rooms, col);
  ASSERT_EQ(h.counts.size(), 10u);
  EXPECT_EQ(h.counts[0], 1.0);
  EXPECT_EQ(h.counts[4], 1.0);
  EXPECT_EQ(h.counts[9], 1.0);
  EXPECT_EQ(h.total(), 3.0);
}

TEST(Histogram, WideDomainsUseEquiWidthBins) {
  BinLayout wide = bin_layout(integer("w", 0, 999));
  EXPECT_EQ(wide.count, kMaxBins);
  EXPECT_FALSE(wide.per_value);
  EXPECT_EQ(wide.bin_of(0), 0u);
  EXPECT_EQ(wide.bin_of(999), kMaxBins - 1);

  BinLayout r = bin_layout(testing::real("r", 0, 1));
  EXPECT_EQ(r.count, kMaxBins);
  EXPECT_EQ(r.bin_of(1.0), kMaxBins - 1);
  EXPECT_EQ(r.bin_of(0.5), kMaxBins / 2);

  BinLayout exact = bin_layout(integer("e", 0, 255));
  EXPECT_TRUE(exact.per_value);
  EXPECT_EQ(exact.count, 256u);

  BinLayout point = bin_layout(testing::real("p", 3, 3));
  EXPECT_EQ(point.count, 1u);
  EXPECT_EQ(point.bin_of(3.0), 0u);
}

TEST(Histogram, BinsTileTheDomain) {
  for (const AttributeSpec& a : {integer("w", -7, 1000), testing::real("r", -2.5, 4.0)}) {
    BinLayout b = bin_layout(a);
    EXPECT_DOUBLE_EQ(b.lower(0), a.lo);
    for (std::size_t i = 1; i < b.count; ++i) EXPECT_DOUBLE_EQ(b.lower(i), b.upper(i - 1));
    EXPECT_NEAR(b.upper(b.count - 1), a.kind == AttributeKind::kInteger ? a.hi + 1 : a.hi, 1e-9);
  }
}

TEST(Histogram, TotalsPreservedAndMultiColumnRejected) {
  std::mt19937_64 g(1);
  for (int trial = 0; trial < 100; ++trial) {
    ColumnTable t = testing::random_table(g, std::uniform_int_distribution<int>(0, 60)(g), 1);
    EXPECT_EQ(build_histogram(t).total(), static_cast<double>(t.row_count()));
  }
  EXPECT_THROW(build_histogram(two_cat({0}, {0})), std::invalid_argument);
}

TEST(Histogram, ClampRemovesNegatives) {
  std::vector<double> c{-1.5, 0.0, 2.5};
  clamp_nonnegative(c);
  EXPECT_EQ(c, (std::vector<double>{0.0, 0.0, 2.5}));
}

TEST(Entropy, WorkedExamples) {
  ColumnTable one(table_schema("t", {categorical("x", {"a", "b"})}, true), {{0, 0, 1, 1}}, 4);
  EXPECT_DOUBLE_EQ(entropy(one), 1.0);
  ColumnTable same(table_schema("t", {categorical("x", {"a", "b"})}, true), {{1, 1, 1, 1}}, 4);
  EXPECT_DOUBLE_EQ(entropy(same), 0.0);
  EXPECT_DOUBLE_EQ(entropy(two_cat({0, 0, 1, 1}, {0, 1, 0, 1})), 2.0);
  ColumnTable empty(table_schema("t", {categorical("x", {"a"})}, true), {{}}, 0);
  EXPECT_THROW(entropy(empty), std::invalid_argument);
}

TEST(Entropy, MatchesBruteForceOnSmallBinaryTables) {
  for (std::size_t rows = 1; rows <= 5; ++rows) {
    for (std::size_t cols = 1; cols <= 3; ++cols) {
      for (std::uint64_t code = 0; code < (1ull << (rows * cols)); ++code) {
        ColumnTable t = binary_table(rows, cols, code);
        std::vector<std::size_t> all(cols);
        for (std::size_t c = 0; c < cols; ++c) all[c] = c;
        const double h = entropy(t);
        ASSERT_NEAR(h, brute_entropy(t, all), 1e-12);
        ASSERT_GE(h, 0.0);
        ASSERT_LE(h, std::log2(static_cast<double>(rows)) + 1e-12);
      }
    }
  }
}

TEST(Entropy, EncoderAgreesOnColumnSubsets) {
  std::mt19937_64 g(2);
  ColumnTable t = testing::random_table(g, 200, 4);
  TupleEncoder enc(t);
  for (const std::vector<std::size_t>& cols :
       std::vector<std::vector<std::size_t>>{{0}, {1, 3}, {3, 1}, {0, 1, 2, 3}}) {
    EXPECT_NEAR(enc.entropy(cols), brute_entropy(t, cols), 1e-9);
  }
}

TEST(Nmi, WorkedExamples) {
  auto p = IndexPartition::make({0}, {1}, Axis::kColumns, 2);
  EXPECT_NEAR(nmi(two_cat({0, 0, 1, 1}, {0, 1, 0, 1}), p), 0.0, 1e-12);
  EXPECT_NEAR(nmi(two_cat({0, 0, 1, 1}, {0, 0, 1, 1}), p), 0.5, 1e-12);
  EXPECT_THROW(nmi(two_cat({0}, {1}), p), std::invalid_argument);
}

TEST(Nmi, MatchesBruteForceAndIsSymmetric) {
  for (std::size_t rows = 2; rows <= 5; ++rows) {
    for (std::size_t cols = 2; cols <= 3; ++cols) {
      for (std::uint64_t code = 0; code < (1ull << (rows * cols)); ++code) {
        ColumnTable t = binary_table(rows, cols, code);
        for (std::size_t first = 0; first < cols; ++first) {
          auto p = IndexPartition::from_left({first}, Axis::kColumns, cols);
          auto q = IndexPartition::make(p.right, p.left, Axis::kColumns, cols);
          const double v = nmi(t, p);
          ASSERT_NEAR(v, brute_nmi(t, p), 1e-12);
          ASSERT_NEAR(v, nmi(t, q), 1e-12);
          ASSERT_GE(v, -1e-12);
          ASSERT_LE(v, 1.0 + 1e-12);
        }
      }
    }
  }
}

TEST(Nmi, ConstantSideGivesZero) {
  std::mt19937_64 g(4);
  for (int trial = 0; trial < 50; ++trial) {
    ColumnTable t = testing::random_table(g, 40, 3);
    std::vector<std::vector<double>> cols = t.columns();
    const AttributeSpec& a = t.schema().attributes[0];
    std::fill(cols[0].begin(), cols[0].end(), a.kind == AttributeKind::kCategorical ? 0.0 : a.lo);
    ColumnTable c(t.schema(), cols, t.row_count());
    EXPECT_NEAR(nmi(c, IndexPartition::from_left({0}, Axis::kColumns, 3)), 0.0, 1e-12);
  }
}

TEST(NmiSensitivity, ValuesAndCap) {
  EXPECT_DOUBLE_EQ(nmi_sensitivity(2), 3.0);
  const double n = 1e4;
  const double expect = 3 * ((2 / n) * std::log2(n) + 2 / (n * std::log(2.0))) / std::log2(n);
  EXPECT_NEAR(nmi_sensitivity(10000), expect, 1e-15);
  EXPECT_NEAR(nmi_sensitivity(10000), 6.65e-4, 0.01e-4);
  EXPECT_THROW(nmi_sensitivity(1), std::invalid_argument);
  for (std::size_t k = 2; k < 100000; k *= 3) EXPECT_GE(nmi_sensitivity(k), nmi_sensitivity(k * 3));
}

// Entropy of the masked bits of each row code, by counting.
double masked_entropy(const std::vector<unsigned>& rows, unsigned mask) {
  std::map<unsigned, double> freq;
  for (unsigned r : rows) freq[r & mask] += 1.0;
  const double n = static_cast<double>(rows.size());
  double h = 0.0;
  for (const auto& [k, c] : freq) h -= c / n * std::log2(c / n);
  return h;
}

double fast_nmi(const std::vector<unsigned>& rows, unsigned left, unsigned all) {
  return (masked_entropy(rows, left) + masked_entropy(rows, all & ~left) -
          masked_entropy(rows, all)) /
         std::log2(static_cast<double>(rows.size()));
}

// Every pair of binary tables that differ in one row's value, n <= 5, m <= 3.
TEST(NmiSensitivity, BoundsEveryNeighbouringPair) {
  for (std::size_t n = 2; n <= 5; ++n) {
    for (unsigned m = 2; m <= 3; ++m) {
      const unsigned all = (1u << m) - 1;
      double worst = 0.0;
      std::vector<unsigned> rows(n);
      for (std::uint64_t code = 0; code < (1ull << (n * m)); ++code) {
        for (std::size_t r = 0; r < n; ++r) rows[r] = (code >> (r * m)) & all;
        for (unsigned bit = 0; bit < m; ++bit) {
          const unsigned left = 1u << bit;
          const double base = fast_nmi(rows, left, all);
          for (std::size_t r = 0; r < n; ++r) {
            const unsigned keep = rows[r];
            for (unsigned v = 0; v <= all; ++v) {
              if (v == keep) continue;
              rows[r] = v;
              worst = std::max(worst, std::fabs(fast_nmi(rows, left, all) - base));
            }
            rows[r] = keep;
          }
        }
      }
      EXPECT_LE(worst, nmi_sensitivity(n)) << "n=" << n << " m=" << m;
    }
  }
}

TEST(Fanout, HouseholdCounts) {
  Database db = testing::household_db();
  const ColumnTable& member = db.tables[1];
  std::vector<std::size_t> all{0, 1, 2, 3, 4, 5};
  FanoutTable f = build_fanout(member, "h_id", all, {3, 1, 2});
  EXPECT_EQ(f.keys, (std::vector<double>{1, 2, 3}));
  EXPECT_EQ(f.counts, (std::vector<double>{2, 3, 1}));
  EXPECT_EQ(f.total(), 6.0);
  EXPECT_EQ(f.count_of(2), 3.0);

  std::vector<std::size_t> first_two{0, 1};
  EXPECT_EQ(build_fanout(member, "h_id", first_two, {1, 2, 3}).counts,
            (std::vector<double>{2, 0, 0}));
  std::vector<std::size_t> none;
  EXPECT_EQ(build_fanout(member, "h_id", none, {1, 2, 3}).counts, (std::vector<double>{0, 0, 0}));
}

TEST(Fanout, RejectsNonForeignKeyAndUnknownKey) {
  Database db = testing::household_db();
  std::vector<std::size_t> all{0, 1, 2, 3, 4, 5};
  EXPECT_THROW(build_fanout(db.tables[1], "age", all, {1, 2, 3}), std::invalid_argument);
  EXPECT_THROW(build_fanout(db.tables[1], "h_id", all, {1, 2}), DataError);
}

}  // namespace
}  // namespace dpsynth
