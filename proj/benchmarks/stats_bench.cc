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
#include <benchmark/benchmark.h>

#include <numeric>

#include "bench_data.h"
#include "dpsynth/entropy.h"
#include "dpsynth/histogram.h"
#include "dpsynth/split.h"

namespace dpsynth {
namespace {

void BM_JointEntropy(benchmark::State& state) {
  const ColumnTable t = bench::clustered(static_cast<std::size_t>(state.range(0)), 6);
  const TupleEncoder enc(t);
  std::vector<std::size_t> cols(6);
  std::iota(cols.begin(), cols.end(), 0);
  for (auto _ : state) benchmark::DoNotOptimize(enc.entropy(cols));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_JointEntropy)->Range(1 << 10, 1 << 16);

void BM_NmiCandidate(benchmark::State& state) {
  const ColumnTable t = bench::clustered(static_cast<std::size_t>(state.range(0)), 6);
  const auto p = IndexPartition::from_left({0, 2, 4}, Axis::kColumns, 6);
  for (auto _ : state) benchmark::DoNotOptimize(nmi(t, p));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_NmiCandidate)->Range(1 << 10, 1 << 16);

void BM_RowSplit(benchmark::State& state) {
  const ColumnTable t = bench::clustered(static_cast<std::size_t>(state.range(0)), 4);
  SplitConfig cfg;
  cfg.min_table_size = 100;
  std::uint64_t seed = 0;
  for (auto _ : state) {
    RngStream rng(seed++);
    benchmark::DoNotOptimize(row_split(t, Budget{1.0}, cfg, rng));
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_RowSplit)->Range(1 << 10, 1 << 15);

void BM_ColSplit(benchmark::State& state) {
  const ColumnTable t = bench::clustered(10000, static_cast<std::size_t>(state.range(0)));
  std::uint64_t seed = 0;
  for (auto _ : state) {
    RngStream rng(seed++);
    benchmark::DoNotOptimize(col_split(t, Budget{1.0}, rng));
  }
}
BENCHMARK(BM_ColSplit)->DenseRange(3, 9, 3);

void BM_Histogram(benchmark::State& state) {
  const ColumnTable t = bench::clustered(static_cast<std::size_t>(state.range(0)), 1);
  for (auto _ : state) benchmark::DoNotOptimize(build_histogram(t));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_Histogram)->Range(1 << 10, 1 << 16);

}  // namespace
}  // namespace dpsynth

BENCHMARK_MAIN();
