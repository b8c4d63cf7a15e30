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
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "dpsynth/error.h"
#include "dpsynth/mechanisms.h"
#include "dpsynth/spn.h"

namespace dpsynth {

namespace {

SpnNode make_fanout_leaf(const ColumnTable& t, std::string_view fk, std::size_t fk_index,
                         const std::vector<std::size_t>& rows,
                         const std::vector<double>& key_domain, double epsilon, RngStream& rng,
                         const LedgerScope* scope) {
  FanoutTable f = build_fanout(t, fk, rows, key_domain);
  if (!f.counts.empty()) {
    f.counts = laplace_perturb(f.counts, kFanoutSensitivity, Budget{epsilon}, rng, scope,
                               "fanout");
    clamp_nonnegative(f.counts);
  } else if (scope) {
    scope->charge("fanout", epsilon);
  }
  SpnNode node;
  node.payload = FanoutLeafNode{std::move(f)};
  node.attributes = {fk_index};
  node.rows = rows.size();
  node.epsilon = epsilon;
  return node;
}

}  // namespace

SpnTree priv_fanout(const ColumnTable& t, const SpnTree& tree, std::string_view fk,
                    const std::vector<double>& key_domain, double epsilon, RngStream& rng,
                    const LedgerScope* scope) {
  if (!(epsilon > 0.0)) throw ConfigError("fanout construction requires epsilon > 0");
  const auto fk_index = t.schema().index_of(fk);
  if (!fk_index || t.schema().attributes[*fk_index].role != KeyRole::kForeignKey) {
    throw std::invalid_argument(std::string(fk) + " is not a foreign key of " + t.name());
  }
  if (tree.rows != t.row_count()) {
    throw std::invalid_argument("tree row count differs from table " + t.name());
  }

  std::optional<LedgerScope> channel;
  if (scope) channel = scope->with_channel("fanout:" + std::string(fk));
  auto scope_at = [&](const std::string& path) -> std::optional<LedgerScope> {
    if (!channel) return std::nullopt;
    return path.empty() ? *channel : channel->child(path);
  };
  auto rng_at = [&](const std::string& path) {
    return rng.derive("fanout/" + std::string(fk) + (path.empty() ? "" : "/" + path));
  };

  SpnTree out = tree;
  std::vector<std::size_t> all(t.row_count());
  std::iota(all.begin(), all.end(), 0);

  bool has_histogram = false;
  for (const SpnNode& n : tree.nodes) has_histogram |= n.kind() == NodeKind::kLeaf;

  if (!has_histogram) {
    if (out.empty()) {
      auto s = scope_at("");
      RngStream r = rng_at("");
      out.root = out.add(make_fanout_leaf(t, fk, *fk_index, all, key_domain, epsilon, r,
                                          s ? &*s : nullptr));
      return out;
    }
    auto s = scope_at("R");
    RngStream r = rng_at("R");
    const std::size_t leaf =
        out.add(make_fanout_leaf(t, fk, *fk_index, all, key_domain, epsilon, r, s ? &*s : nullptr));
    SpnNode top;
    top.attributes = out.nodes[out.root].attributes;
    std::vector<std::size_t> left(top.attributes.size());
    std::iota(left.begin(), left.end(), 0);
    top.attributes.push_back(*fk_index);
    top.payload = ProductNode{IndexPartition::make(std::move(left), {top.attributes.size() - 1},
                                                   Axis::kColumns, top.attributes.size())};
    top.rows = t.row_count();
    top.epsilon = out.nodes[out.root].epsilon;
    top.left = out.root;
    top.right = leaf;
    out.root = out.add(std::move(top));
    return out;
  }

  const std::size_t target = most_leaves_attribute(tree);
  const auto rows = node_rows(tree);
  const auto paths = tree.paths();
  std::vector<std::size_t> parent(tree.nodes.size(), kNoNode);
  for (std::size_t i = 0; i < tree.nodes.size(); ++i) {
    const SpnNode& n = tree.nodes[i];
    if (n.is_leaf()) continue;
    parent[n.left] = i;
    parent[n.right] = i;
    if (n.kind() == NodeKind::kSum) {
      auto s = scope_at(paths[i]);
      if (s) s->mark(Composition::kParallel);
    }
  }
  std::vector<char> widened(tree.nodes.size(), 0);

  for (std::size_t i = 0; i < tree.nodes.size(); ++i) {
    const SpnNode& original = tree.nodes[i];
    if (original.kind() != NodeKind::kLeaf || original.attributes[0] != target) continue;
    if (i != tree.root && parent[i] == kNoNode) continue;  // unreachable node

    const std::string leaf_path = paths[i].empty() ? "R" : paths[i] + "/R";
    auto s = scope_at(leaf_path);
    RngStream r = rng_at(leaf_path);
    const std::size_t left = out.add(original);
    const std::size_t right = out.add(
        make_fanout_leaf(t, fk, *fk_index, rows[i], key_domain, epsilon, r, s ? &*s : nullptr));
    SpnNode& replaced = out.nodes[i];
    replaced.payload = ProductNode{IndexPartition::make({0}, {1}, Axis::kColumns, 2)};
    replaced.attributes = {target, *fk_index};
    replaced.left = left;
    replaced.right = right;

    std::size_t child = i;
    for (std::size_t a = parent[i]; a != kNoNode && !widened[a]; child = a, a = parent[a]) {
      widened[a] = 1;
      SpnNode& anc = out.nodes[a];
      const std::size_t pos = anc.attributes.size();
      anc.attributes.push_back(*fk_index);
      if (auto* p = std::get_if<ProductNode>(&anc.payload)) {
        (anc.left == child ? p->partition.left : p->partition.right).push_back(pos);
      }
    }
  }
  return out;
}

}  // namespace dpsynth
