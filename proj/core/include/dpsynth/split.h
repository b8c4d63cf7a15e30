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
#ifndef DPSYNTH_SPLIT_H_
#define DPSYNTH_SPLIT_H_

#include <cstddef>
#include <vector>

#include "dpsynth/ledger.h"
#include "dpsynth/rng.h"
#include "dpsynth/table.h"

namespace dpsynth {

struct SplitConfig {
  int iterations = 5;              // J
  std::size_t min_table_size = 10000;  // beta

  void validate() const;
};

// Per-attribute distance used by row_split: L1 on domain-normalized numerics,
// and for categoricals the expected Hamming distance to a cluster (one minus
// the value's share in the cluster). Each lies in [0, 1], so for m
// attributes the distance difference to two centers lies in [-m, m].
double diff_sensitivity(std::size_t attribute_count);

// Differentially private 2-means row partition. Starts from a uniformly
// random half split, runs cfg.iterations noisy Lloyd steps (Laplace noise of
// scale diff_sensitivity * J / epsilon on every distance difference), then
// moves random rows from the larger side until both sides hold at least
// cfg.min_table_size rows. Charges epsilon to scope.
//
// Throws ConfigError if epsilon <= 0 or row_count < 2 * min_table_size.
IndexPartition row_split(const ColumnTable& t, Budget budget, const SplitConfig& cfg,
                         RngStream& rng, const LedgerScope* scope = nullptr);

// The attribute_count candidate column partitions with |left| = floor(m / 2),
// each drawn uniformly (duplicates possible).
std::vector<IndexPartition> sample_column_candidates(std::size_t attribute_count,
                                                     RngStream& rng);

struct ColSplitResult {
  IndexPartition partition;
  std::vector<IndexPartition> candidates;
  std::vector<double> scores;  // NMI per candidate
  std::size_t chosen = 0;
};

// Exponential-mechanism choice among sampled half-size column partitions,
// preferring low NMI, with sensitivity nmi_sensitivity(|T|). A two-column
// table has a single partition, returned with probability 1; the budget is
// still recorded so that the spend always equals the grant.
// Throws std::invalid_argument for tables with fewer than two attributes.
ColSplitResult col_split_detailed(const ColumnTable& t, Budget budget, RngStream& rng,
                                  const LedgerScope* scope = nullptr);
IndexPartition col_split(const ColumnTable& t, Budget budget, RngStream& rng,
                         const LedgerScope* scope = nullptr);

}  // namespace dpsynth

#endif  // DPSYNTH_SPLIT_H_
