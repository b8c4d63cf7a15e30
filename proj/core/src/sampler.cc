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
#include "dpsynth/sampler.h"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <numeric>
#include <string>

#include "dpsynth/error.h"
#include "dpsynth/parallel.h"

namespace dpsynth {

std::pair<std::size_t, std::size_t> split_target(std::size_t n, double weight_left) {
  const double raw = std::round(static_cast<double>(n) * weight_left);
  const std::size_t left = std::min(n, static_cast<std::size_t>(std::max(0.0, raw)));
  return {left, n - left};
}

namespace {

// Cumulative distribution over weights; uniform if every weight is zero.
class Categorical {
 public:
  Categorical(const std::vector<double>& weights, bool* degenerate) {
    cdf_.resize(weights.size());
    double acc = 0.0;
    for (std::size_t i = 0; i < weights.size(); ++i) {
      acc += std::max(weights[i], 0.0);
      cdf_[i] = acc;
    }
    if (!(acc > 0.0)) {
      *degenerate = true;
      std::iota(cdf_.begin(), cdf_.end(), 1.0);
    }
  }

  std::size_t draw(RngStream& rng) const {
    const double u = rng.uniform() * cdf_.back();
    const auto it = std::upper_bound(cdf_.begin(), cdf_.end(), u);
    return std::min<std::size_t>(it - cdf_.begin(), cdf_.size() - 1);
  }

 private:
  std::vector<double> cdf_;
};

double value_in_bin(const AttributeSpec& spec, const BinLayout& layout, std::size_t bin,
                    RngStream& rng) {
  if (layout.per_value) return layout.lower(bin);
  if (spec.kind == AttributeKind::kInteger) {
    const double a = std::ceil(layout.lower(bin));
    const double b = std::min(spec.hi, std::ceil(layout.upper(bin)) - 1.0);
    if (b <= a) return a;
    return a + static_cast<double>(rng.uniform_index(static_cast<std::size_t>(b - a) + 1));
  }
  if (layout.width <= 0.0) return spec.lo;
  return std::min(spec.hi, layout.lower(bin) + rng.uniform() * layout.width);
}

struct Sampler {
  const SpnTree& tree;
  const std::vector<std::string>& paths;
  RngStream& rng;
  std::size_t degenerate = 0;
  // Per schema attribute, the sampled column being assembled.
  std::vector<std::vector<double>> columns;

  void run(std::size_t node, std::size_t n) {
    const SpnNode& s = tree.nodes[node];
    RngStream r = rng.derive(paths[node].empty() ? "node" : "node/" + paths[node]);
    if (const auto* sum = std::get_if<SumNode>(&s.payload)) {
      const auto [nl, nr] = split_target(n, sum->weight_left);
      run(s.left, nl);
      run(s.right, nr);
    } else if (std::holds_alternative<ProductNode>(s.payload)) {
      run(s.left, n);
      run(s.right, n);
    } else if (const auto* leaf = std::get_if<LeafNode>(&s.payload)) {
      const AttributeSpec& spec = leaf->histogram.attribute;
      const BinLayout layout = bin_layout(spec);
      bool deg = false;
      const Categorical dist(leaf->histogram.counts, &deg);
      degenerate += deg;
      auto& col = columns[s.attributes[0]];
      for (std::size_t k = 0; k < n; ++k) col.push_back(value_in_bin(spec, layout, dist.draw(r), r));
    } else {
      const FanoutTable& f = std::get<FanoutLeafNode>(s.payload).fanout;
      auto& col = columns[s.attributes[0]];
      if (n == 0) return;
      if (f.keys.empty()) throw DataError("fanout leaf without referenced keys");
      bool deg = false;
      const Categorical dist(f.counts, &deg);
      degenerate += deg;
      for (std::size_t k = 0; k < n; ++k) col.push_back(f.keys[dist.draw(r)]);
    }
  }
};

}  // namespace

ColumnTable sample_table(const SpnTree& tree, std::size_t n, RngStream& rng, SampleStats* stats) {
  const TableSchema& schema = tree.schema;
  const auto paths = tree.paths();
  Sampler s{tree, paths, rng, 0, std::vector<std::vector<double>>(schema.attributes.size())};
  if (!tree.empty()) s.run(tree.root, n);
  const auto pk = schema.primary_key_index();
  for (std::size_t a = 0; a < schema.attributes.size(); ++a) {
    auto& col = s.columns[a];
    if (pk && a == *pk) {
      col.resize(n);
      std::iota(col.begin(), col.end(), 1.0);
    } else if (col.size() != n) {
      throw DataError("attribute '" + schema.attributes[a].name + "' of table '" + schema.name +
                      "' is not covered by its SPN");
    }
  }
  if (stats) stats->degenerate_leaves += s.degenerate;
  return ColumnTable(schema, std::move(s.columns), n);
}

KeyMap::KeyMap(std::vector<double> original_keys) : keys_(std::move(original_keys)) {
  std::sort(keys_.begin(), keys_.end());
}

double KeyMap::map(double original) const {
  const auto it = std::lower_bound(keys_.begin(), keys_.end(), original);
  if (it == keys_.end() || *it != original) {
    throw DataError("foreign key value " + std::to_string(original) +
                    " does not reference an original key");
  }
  return static_cast<double>(it - keys_.begin()) + 1.0;
}

Database assemble_database(const DatabaseSchema& schema, const std::vector<SpnTree>& trees,
                           const std::vector<std::vector<double>>& key_domains, RngStream& rng,
                           SampleStats* stats, std::size_t threads) {
  const std::size_t count = schema.tables.size();
  if (trees.size() != count || key_domains.size() != count) {
    throw std::invalid_argument("assemble_database: one tree and key domain per table required");
  }
  std::vector<KeyMap> maps;
  maps.reserve(count);
  for (const auto& keys : key_domains) maps.emplace_back(keys);

  Database db;
  db.schema = schema;
  db.tables.resize(count);
  std::atomic<std::size_t> degenerate{0};
  parallel_for(count, threads, [&](std::size_t i) {
    const SpnTree& tree = trees[i];
    if (tree.schema != schema.tables[i]) {
      throw DataError("SPN for table '" + tree.schema.name + "' does not match the schema");
    }
    RngStream r = rng.derive("sample/" + schema.tables[i].name);
    SampleStats local;
    ColumnTable t = sample_table(tree, tree.rows, r, &local);
    degenerate += local.degenerate_leaves;
    auto columns = t.columns();
    for (std::size_t fk : schema.tables[i].foreign_key_indices()) {
      const auto target = schema.index_of(schema.tables[i].attributes[fk].fk_target);
      for (double& v : columns[fk]) v = maps[*target].map(v);
    }
    db.tables[i] = ColumnTable(schema.tables[i], std::move(columns), tree.rows);
  });
  if (stats) stats->degenerate_leaves += degenerate;
  return db;
}

}  // namespace dpsynth
