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
#include "dpsynth/split.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "dpsynth/entropy.h"
#include "dpsynth/error.h"
#include "dpsynth/mechanisms.h"

namespace dpsynth {

void SplitConfig::validate() const {
  if (iterations < 1) throw ConfigError("row split iterations must be >= 1");
  if (min_table_size < 1) throw ConfigError("minimum table size beta must be >= 1");
}

double diff_sensitivity(std::size_t attribute_count) {
  return 2.0 * static_cast<double>(attribute_count);
}

namespace {

// Row features prepared for distance evaluation.
struct Features {
  std::size_t rows = 0;
  std::vector<std::vector<double>> numeric;       // normalized to [0, 1]
  std::vector<std::vector<std::uint32_t>> codes;  // categorical codes
  std::vector<std::size_t> cardinality;           // per categorical column
};

Features prepare(const ColumnTable& t) {
  Features f;
  f.rows = t.row_count();
  for (std::size_t c = 0; c < t.column_count(); ++c) {
    const auto& spec = t.schema().attributes[c];
    auto col = t.column(c);
    if (spec.kind == AttributeKind::kCategorical) {
      f.codes.emplace_back(col.begin(), col.end());
      f.cardinality.push_back(spec.categories.size());
    } else {
      const double span = spec.hi - spec.lo;
      std::vector<double> v(col.size());
      for (std::size_t r = 0; r < col.size(); ++r) {
        v[r] = span > 0 ? (col[r] - spec.lo) / span : 0.0;
      }
      f.numeric.push_back(std::move(v));
    }
  }
  return f;
}

// Numeric means and categorical value shares of a cluster.
struct Center {
  std::vector<double> mean;
  std::vector<std::vector<double>> share;
};

Center center_of(const Features& f, const std::vector<std::uint8_t>& in_right, bool right,
                 RngStream& rng) {
  Center c;
  std::size_t members = 0;
  for (std::size_t r = 0; r < f.rows; ++r) members += (in_right[r] != 0) == right;
  if (members == 0) {
    // Empty cluster: reseed at a uniformly random row.
    const std::size_t pick = rng.uniform_index(f.rows);
    for (const auto& col : f.numeric) c.mean.push_back(col[pick]);
    for (std::size_t k = 0; k < f.codes.size(); ++k) {
      std::vector<double> s(f.cardinality[k], 0.0);
      s[f.codes[k][pick]] = 1.0;
      c.share.push_back(std::move(s));
    }
    return c;
  }
  const double inv = 1.0 / static_cast<double>(members);
  for (const auto& col : f.numeric) {
    double sum = 0.0;
    for (std::size_t r = 0; r < f.rows; ++r) {
      if ((in_right[r] != 0) == right) sum += col[r];
    }
    c.mean.push_back(sum * inv);
  }
  for (std::size_t k = 0; k < f.codes.size(); ++k) {
    std::vector<double> s(f.cardinality[k], 0.0);
    for (std::size_t r = 0; r < f.rows; ++r) {
      if ((in_right[r] != 0) == right) s[f.codes[k][r]] += inv;
    }
    c.share.push_back(std::move(s));
  }
  return c;
}

double distance(const Features& f, std::size_t r, const Center& c) {
  double d = 0.0;
  for (std::size_t k = 0; k < f.numeric.size(); ++k) d += std::fabs(f.numeric[k][r] - c.mean[k]);
  for (std::size_t k = 0; k < f.codes.size(); ++k) d += 1.0 - c.share[k][f.codes[k][r]];
  return d;
}

}  // namespace

IndexPartition row_split(const ColumnTable& t, Budget budget, const SplitConfig& cfg,
                         RngStream& rng, const LedgerScope* scope) {
  cfg.validate();
  if (!(budget.epsilon > 0.0)) throw ConfigError("row_split requires epsilon > 0");
  const std::size_t n = t.row_count();
  const std::size_t beta = cfg.min_table_size;
  if (n < 2 * beta) {
    throw ConfigError("row_split needs at least 2 * beta = " + std::to_string(2 * beta) +
                      " rows, got " + std::to_string(n));
  }
  if (t.column_count() == 0) throw ConfigError("row_split needs at least one attribute");

  const Features f = prepare(t);
  RngStream init_rng = rng.derive("init");
  RngStream noise_rng = rng.derive("noise");
  RngStream reseed_rng = rng.derive("reseed");
  RngStream adjust_rng = rng.derive("adjust");

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  shuffle(order.begin(), order.end(), init_rng);
  std::vector<std::uint8_t> in_right(n, 1);
  for (std::size_t k = 0; k < n / 2; ++k) in_right[order[k]] = 0;

  const double scale = diff_sensitivity(t.column_count()) * cfg.iterations / budget.epsilon;
  for (int j = 0; j < cfg.iterations; ++j) {
    const Center left = center_of(f, in_right, false, reseed_rng);
    const Center right = center_of(f, in_right, true, reseed_rng);
    for (std::size_t r = 0; r < n; ++r) {
      const double diff = distance(f, r, left) - distance(f, r, right);
      in_right[r] = diff + laplace_noise(scale, noise_rng) > 0.0 ? 1 : 0;
    }
  }
  if (scope) scope->charge("row_split", budget.epsilon);

  std::vector<std::size_t> left, right;
  for (std::size_t r = 0; r < n; ++r) (in_right[r] ? right : left).push_back(r);
  // Move uniformly random rows from the larger side until both reach beta.
  auto rebalance = [&](std::vector<std::size_t>& small, std::vector<std::size_t>& large) {
    while (small.size() < beta) {
      const std::size_t k = adjust_rng.uniform_index(large.size());
      small.push_back(large[k]);
      large[k] = large.back();
      large.pop_back();
    }
  };
  if (left.size() < beta) rebalance(left, right);
  if (right.size() < beta) rebalance(right, left);
  return IndexPartition::make(std::move(left), std::move(right), Axis::kRows, n);
}

std::vector<IndexPartition> sample_column_candidates(std::size_t m, RngStream& rng) {
  if (m < 2) throw std::invalid_argument("column partitions need at least two attributes");
  std::vector<IndexPartition> out;
  out.reserve(m);
  std::vector<std::size_t> idx(m);
  for (std::size_t j = 0; j < m; ++j) {
    std::iota(idx.begin(), idx.end(), 0);
    const std::size_t half = m / 2;
    for (std::size_t k = 0; k < half; ++k) {
      std::swap(idx[k], idx[k + rng.uniform_index(m - k)]);
    }
    out.push_back(IndexPartition::from_left({idx.begin(), idx.begin() + half}, Axis::kColumns, m));
  }
  return out;
}

ColSplitResult col_split_detailed(const ColumnTable& t, Budget budget, RngStream& rng,
                                  const LedgerScope* scope) {
  const std::size_t m = t.column_count();
  if (m < 2) throw std::invalid_argument("col_split needs at least two attributes");
  if (!(budget.epsilon >= 0.0)) throw ConfigError("col_split requires epsilon >= 0");
  ColSplitResult res;
  if (m == 2) {
    res.partition = IndexPartition::make({0}, {1}, Axis::kColumns, 2);
    res.candidates = {res.partition};
    res.scores = {t.row_count() >= 2 ? nmi(t, res.partition) : 0.0};
    if (scope && budget.epsilon > 0.0) scope->charge("col_split", budget.epsilon);
    return res;
  }
  res.candidates = sample_column_candidates(m, rng);
  res.scores.assign(m, 0.0);
  const std::size_t n = t.row_count();
  double sensitivity = 3.0;
  if (n >= 2) {
    const TupleEncoder enc(t);
    for (std::size_t j = 0; j < m; ++j) res.scores[j] = nmi(enc, res.candidates[j]);
    sensitivity = nmi_sensitivity(n);
  }
  res.chosen = exponential_choose(res.scores, sensitivity, budget, rng, scope, "col_split");
  res.partition = res.candidates[res.chosen];
  return res;
}

IndexPartition col_split(const ColumnTable& t, Budget budget, RngStream& rng,
                         const LedgerScope* scope) {
  return col_split_detailed(t, budget, rng, scope).partition;
}

}  // namespace dpsynth
