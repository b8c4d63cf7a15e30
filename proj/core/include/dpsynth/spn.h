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
#ifndef DPSYNTH_SPN_H_
#define DPSYNTH_SPN_H_

#include <cstddef>
#include <limits>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include <nlohmann/json.hpp>

#include "dpsynth/fanout.h"
#include "dpsynth/histogram.h"
#include "dpsynth/ledger.h"
#include "dpsynth/rng.h"
#include "dpsynth/schema.h"
#include "dpsynth/split.h"
#include "dpsynth/table.h"

namespace dpsynth {

inline constexpr std::size_t kNoNode = std::numeric_limits<std::size_t>::max();

// Row split. Partition indices are positions within the node's rows.
struct SumNode {
  IndexPartition partition;
  double weight_left = 0.5;

  friend bool operator==(const SumNode&, const SumNode&) = default;
};

// Column split. Partition indices are positions within the node's attributes.
struct ProductNode {
  IndexPartition partition;

  friend bool operator==(const ProductNode&, const ProductNode&) = default;
};

struct LeafNode {
  Histogram histogram;

  friend bool operator==(const LeafNode&, const LeafNode&) = default;
};

struct FanoutLeafNode {
  FanoutTable fanout;

  friend bool operator==(const FanoutLeafNode&, const FanoutLeafNode&) = default;
};

enum class NodeKind { kSum, kProduct, kLeaf, kFanoutLeaf };
std::string_view to_string(NodeKind kind);

struct SpnNode {
  std::variant<SumNode, ProductNode, LeafNode, FanoutLeafNode> payload;
  // Attribute indices into the table schema covered by this subtree.
  std::vector<std::size_t> attributes;
  std::size_t rows = 0;
  // Budget granted to this subtree (for leaves: spent on the histogram).
  double epsilon = 0.0;
  std::size_t left = kNoNode;
  std::size_t right = kNoNode;

  NodeKind kind() const { return static_cast<NodeKind>(payload.index()); }
  bool is_leaf() const { return left == kNoNode; }

  friend bool operator==(const SpnNode&, const SpnNode&) = default;
};

// A binary sum-product network over one table, stored as a node arena.
// An empty arena models a table with no attributes to learn.
struct SpnTree {
  TableSchema schema;
  std::size_t beta = 0;
  std::size_t rows = 0;
  std::vector<SpnNode> nodes;
  std::size_t root = kNoNode;

  bool empty() const { return root == kNoNode; }
  const SpnNode& node(std::size_t i) const { return nodes.at(i); }
  std::size_t add(SpnNode n);

  std::size_t depth() const;  // 0 for an empty tree, 1 for a lone leaf
  std::size_t count(NodeKind kind) const;
  // '/'-separated L/R position of every node ("" for the root).
  std::vector<std::string> paths() const;
  // Throws DataError on structural violations (child counts, partition
  // validity, weights, attribute coverage).
  void validate() const;

  friend bool operator==(const SpnTree&, const SpnTree&) = default;
};

// sigma(T) = 2 |T| m / beta - 1: the largest node count a tree can reach.
double scale(std::size_t row_count, std::size_t attr_count, std::size_t beta);
// max(scale, 2m - 1). Equal to scale whenever |T| >= beta; below that the
// plain formula drops under the 2m - 1 nodes of a fully factorized tree
// (and under zero), so budget division uses this form.
double effective_scale(std::size_t row_count, std::size_t attr_count, std::size_t beta);

struct SpnParams {
  double alpha = 0.5;
  std::size_t beta = 10000;
  double gamma1 = 0.5;
  double gamma2 = 0.5;
  int iterations = 5;

  // Throws ConfigError for beta < 1, iterations < 1, gamma1 outside (0, 1)
  // or gamma2 outside [0, 1).
  void validate() const;
  SplitConfig split_config() const { return {iterations, beta}; }
};

enum class Operation { kLeaf, kSum, kProduct };
std::string_view to_string(Operation op);

struct PlanningOutcome {
  Operation op = Operation::kLeaf;
  double eps_op = 0.0;
  double eps_remaining = 0.0;
  double eps_eval = 0.0;
  double noisy_nmi = 0.0;
  bool trial_ran = false;
};

// Chooses the next operation for t under budget epsilon and splits the
// budget into evaluation, operation and remainder. Trial spends are charged
// to scope as "corr_trial/col_split" and "corr_trial/nmi".
PlanningOutcome planning(const ColumnTable& t, double epsilon, const SpnParams& params,
                         RngStream& rng, const LedgerScope* scope = nullptr);

// Builds a tree over t's non-key attributes with total budget epsilon,
// recording every spend (channel "spn") under scope. Sum nodes are marked
// for parallel composition. Throws ConfigError for epsilon <= 0 and
// DataError for an empty table.
SpnTree priv_spn(const ColumnTable& t, double epsilon, const SpnParams& params,
                 RngStream& rng, const LedgerScope* scope = nullptr);

// Row ids (positions in the source table) reaching each node.
std::vector<std::vector<std::size_t>> node_rows(const SpnTree& tree);

// Attribute (schema index) with the most histogram leaves, lowest index on
// ties. Throws std::invalid_argument if the tree has no histogram leaf.
std::size_t most_leaves_attribute(const SpnTree& tree);

// Copy of tree in which every histogram leaf of the attribute with the most
// leaves becomes Product(leaf, fanout leaf) over the same rows, the fanout
// counts perturbed with the full epsilon (disjoint row sets). A tree without
// histogram leaves becomes a fanout leaf over all rows, joined to any
// existing root by a product. Spends go to scope's channel "fanout:<fk>".
SpnTree priv_fanout(const ColumnTable& t, const SpnTree& tree, std::string_view fk,
                    const std::vector<double>& key_domain, double epsilon, RngStream& rng,
                    const LedgerScope* scope = nullptr);

inline constexpr int kSpnFormatVersion = 1;

nlohmann::json spn_to_json(const SpnTree& tree);
// Throws DataError on a malformed document.
SpnTree spn_from_json(const nlohmann::json& j);
std::string serialize_spn(const SpnTree& tree);
SpnTree deserialize_spn(std::string_view bytes);

}  // namespace dpsynth

#endif  // DPSYNTH_SPN_H_
