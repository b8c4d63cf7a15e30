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
#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <stdexcept>
#include <string>

#include "dpsynth/error.h"
#include "dpsynth/spn.h"

namespace dpsynth {

std::string_view to_string(NodeKind kind) {
  switch (kind) {
    case NodeKind::kSum: return "sum";
    case NodeKind::kProduct: return "product";
    case NodeKind::kLeaf: return "leaf";
    case NodeKind::kFanoutLeaf: return "fanout_leaf";
  }
  return "unknown";
}

std::string_view to_string(Operation op) {
  switch (op) {
    case Operation::kLeaf: return "leaf";
    case Operation::kSum: return "sum";
    case Operation::kProduct: return "product";
  }
  return "unknown";
}

std::size_t SpnTree::add(SpnNode n) {
  nodes.push_back(std::move(n));
  return nodes.size() - 1;
}

std::size_t SpnTree::depth() const {
  if (empty()) return 0;
  std::size_t best = 0;
  std::vector<std::pair<std::size_t, std::size_t>> stack{{root, 1}};
  while (!stack.empty()) {
    auto [i, d] = stack.back();
    stack.pop_back();
    best = std::max(best, d);
    const SpnNode& n = nodes[i];
    if (!n.is_leaf()) {
      stack.emplace_back(n.left, d + 1);
      stack.emplace_back(n.right, d + 1);
    }
  }
  return best;
}

std::size_t SpnTree::count(NodeKind kind) const {
  if (empty()) return 0;
  std::size_t c = 0;
  std::vector<std::size_t> stack{root};
  while (!stack.empty()) {
    const SpnNode& n = nodes[stack.back()];
    stack.pop_back();
    c += n.kind() == kind;
    if (!n.is_leaf()) {
      stack.push_back(n.left);
      stack.push_back(n.right);
    }
  }
  return c;
}

std::vector<std::string> SpnTree::paths() const {
  std::vector<std::string> out(nodes.size());
  if (empty()) return out;
  std::vector<std::size_t> stack{root};
  while (!stack.empty()) {
    const std::size_t i = stack.back();
    stack.pop_back();
    const SpnNode& n = nodes[i];
    if (n.is_leaf()) continue;
    const std::string prefix = out[i].empty() ? "" : out[i] + "/";
    out[n.left] = prefix + "L";
    out[n.right] = prefix + "R";
    stack.push_back(n.left);
    stack.push_back(n.right);
  }
  return out;
}

namespace {

std::vector<std::size_t> pick(const std::vector<std::size_t>& from,
                              const std::vector<std::size_t>& positions) {
  std::vector<std::size_t> out;
  out.reserve(positions.size());
  for (std::size_t p : positions) out.push_back(from.at(p));
  return out;
}

[[noreturn]] void structure_error(std::size_t node, const std::string& what) {
  throw DataError("malformed SPN at node " + std::to_string(node) + ": " + what);
}

}  // namespace

void SpnTree::validate() const {
  if (empty()) {
    if (!nodes.empty()) throw DataError("malformed SPN: nodes without a root");
    return;
  }
  if (root >= nodes.size()) throw DataError("malformed SPN: root out of range");
  if (nodes[root].rows != rows) structure_error(root, "root row count differs from table");
  std::vector<int> seen(nodes.size(), 0);
  std::vector<std::size_t> stack{root};
  while (!stack.empty()) {
    const std::size_t i = stack.back();
    stack.pop_back();
    if (seen[i]++) structure_error(i, "node reachable twice");
    const SpnNode& n = nodes[i];
    for (std::size_t a : n.attributes) {
      if (a >= schema.attributes.size()) structure_error(i, "attribute index out of range");
    }
    const bool internal = n.kind() == NodeKind::kSum || n.kind() == NodeKind::kProduct;
    if (internal) {
      if (n.left >= nodes.size() || n.right >= nodes.size()) {
        structure_error(i, "internal node needs two children");
      }
    } else if (n.left != kNoNode || n.right != kNoNode) {
      structure_error(i, "leaf with children");
    }
    if (const auto* s = std::get_if<SumNode>(&n.payload)) {
      if (s->partition.axis != Axis::kRows || !s->partition.is_valid(n.rows)) {
        structure_error(i, "invalid row partition");
      }
      const double w = static_cast<double>(s->partition.left.size()) / n.rows;
      if (!(s->weight_left > 0.0 && s->weight_left < 1.0) ||
          std::fabs(s->weight_left - w) > 1e-12) {
        structure_error(i, "sum weight does not match partition sizes");
      }
      const SpnNode& l = nodes[n.left];
      const SpnNode& r = nodes[n.right];
      if (l.rows != s->partition.left.size() || r.rows != s->partition.right.size()) {
        structure_error(i, "child row counts differ from partition");
      }
      if (l.attributes != n.attributes || r.attributes != n.attributes) {
        structure_error(i, "sum children must cover the same attributes");
      }
    } else if (const auto* p = std::get_if<ProductNode>(&n.payload)) {
      if (p->partition.axis != Axis::kColumns || !p->partition.is_valid(n.attributes.size())) {
        structure_error(i, "invalid column partition");
      }
      const SpnNode& l = nodes[n.left];
      const SpnNode& r = nodes[n.right];
      if (l.rows != n.rows || r.rows != n.rows) {
        structure_error(i, "product children must cover the same rows");
      }
      if (l.attributes != pick(n.attributes, p->partition.left) ||
          r.attributes != pick(n.attributes, p->partition.right)) {
        structure_error(i, "product children attributes differ from partition");
      }
    } else if (const auto* leaf = std::get_if<LeafNode>(&n.payload)) {
      if (n.attributes.size() != 1) structure_error(i, "leaf must cover one attribute");
      const AttributeSpec& spec = schema.attributes[n.attributes[0]];
      if (spec.is_key() || leaf->histogram.attribute.name != spec.name) {
        structure_error(i, "leaf attribute mismatch");
      }
      if (leaf->histogram.counts.size() != bin_layout(spec).count) {
        structure_error(i, "histogram bin count mismatch");
      }
    } else {
      const auto& f = std::get<FanoutLeafNode>(n.payload).fanout;
      if (n.attributes.size() != 1) structure_error(i, "fanout leaf must cover one attribute");
      const AttributeSpec& spec = schema.attributes[n.attributes[0]];
      if (spec.role != KeyRole::kForeignKey || f.fk_attribute.name != spec.name) {
        structure_error(i, "fanout leaf attribute mismatch");
      }
      if (f.keys.size() != f.counts.size() || !std::is_sorted(f.keys.begin(), f.keys.end())) {
        structure_error(i, "fanout keys and counts mismatch");
      }
    }
    if (internal) {
      stack.push_back(n.left);
      stack.push_back(n.right);
    }
  }
}

double scale(std::size_t row_count, std::size_t attr_count, std::size_t beta) {
  return 2.0 * static_cast<double>(row_count) * static_cast<double>(attr_count) /
             static_cast<double>(beta) -
         1.0;
}

double effective_scale(std::size_t row_count, std::size_t attr_count, std::size_t beta) {
  return std::max(scale(row_count, attr_count, beta), 2.0 * static_cast<double>(attr_count) - 1.0);
}

void SpnParams::validate() const {
  if (beta < 1) throw ConfigError("beta must be >= 1");
  if (iterations < 1) throw ConfigError("iterations must be >= 1");
  if (!(gamma1 > 0.0 && gamma1 < 1.0)) throw ConfigError("gamma1 must lie in (0, 1)");
  if (!(gamma2 >= 0.0 && gamma2 < 1.0)) throw ConfigError("gamma2 must lie in [0, 1)");
  if (!std::isfinite(alpha)) throw ConfigError("alpha must be finite");
}

std::vector<std::vector<std::size_t>> node_rows(const SpnTree& tree) {
  std::vector<std::vector<std::size_t>> rows(tree.nodes.size());
  if (tree.empty()) return rows;
  rows[tree.root].resize(tree.nodes[tree.root].rows);
  std::iota(rows[tree.root].begin(), rows[tree.root].end(), 0);
  std::vector<std::size_t> stack{tree.root};
  while (!stack.empty()) {
    const std::size_t i = stack.back();
    stack.pop_back();
    const SpnNode& n = tree.nodes[i];
    if (n.is_leaf()) continue;
    if (const auto* s = std::get_if<SumNode>(&n.payload)) {
      rows[n.left] = pick(rows[i], s->partition.left);
      rows[n.right] = pick(rows[i], s->partition.right);
    } else {
      rows[n.left] = rows[i];
      rows[n.right] = rows[i];
    }
    stack.push_back(n.left);
    stack.push_back(n.right);
  }
  return rows;
}

std::size_t most_leaves_attribute(const SpnTree& tree) {
  std::map<std::size_t, std::size_t> counts;
  if (!tree.empty()) {
    std::vector<std::size_t> stack{tree.root};
    while (!stack.empty()) {
      const SpnNode& n = tree.nodes[stack.back()];
      stack.pop_back();
      if (n.kind() == NodeKind::kLeaf) ++counts[n.attributes[0]];
      if (!n.is_leaf()) {
        stack.push_back(n.left);
        stack.push_back(n.right);
      }
    }
  }
  if (counts.empty()) throw std::invalid_argument("tree has no histogram leaves");
  std::size_t best = counts.begin()->first;
  for (const auto& [attr, c] : counts) {
    if (c > counts[best]) best = attr;
  }
  return best;
}

}  // namespace dpsynth
