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
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "dpsynth/error.h"
#include "dpsynth/histogram.h"
#include "dpsynth/mechanisms.h"
#include "dpsynth/spn.h"

namespace dpsynth {

namespace {

struct Task {
  std::size_t node;
  ColumnTable table;
  std::vector<std::size_t> attributes;
  double epsilon;
  std::string path;
};

std::string child_path(const std::string& path, const char* side) {
  return path.empty() ? std::string(side) : path + "/" + side;
}

std::vector<std::size_t> pick(const std::vector<std::size_t>& from,
                              const std::vector<std::size_t>& positions) {
  std::vector<std::size_t> out;
  out.reserve(positions.size());
  for (std::size_t p : positions) out.push_back(from[p]);
  return out;
}

}  // namespace

SpnTree priv_spn(const ColumnTable& t, double epsilon, const SpnParams& params,
                 RngStream& rng, const LedgerScope* scope) {
  params.validate();
  if (!(epsilon > 0.0) || !std::isfinite(epsilon)) {
    throw ConfigError("SPN construction requires epsilon > 0");
  }
  if (t.row_count() == 0) throw DataError("cannot build an SPN over empty table " + t.name());

  SpnTree tree;
  tree.schema = t.schema();
  tree.beta = params.beta;
  tree.rows = t.row_count();
  std::vector<std::size_t> attrs = t.schema().model_attribute_indices();
  if (attrs.empty()) return tree;

  tree.root = tree.add(SpnNode{});
  std::vector<Task> work;
  work.push_back({tree.root, t.model_view(), std::move(attrs), epsilon, ""});

  while (!work.empty()) {
    Task task = std::move(work.back());
    work.pop_back();
    const ColumnTable& sub = task.table;
    const std::size_t n = sub.row_count();

    std::optional<LedgerScope> here;
    if (scope) here = task.path.empty() ? *scope : scope->child(task.path);
    const LedgerScope* node_scope = here ? &*here : nullptr;
    RngStream node_rng = rng.derive(task.path.empty() ? "root" : "root/" + task.path);
    RngStream plan_rng = node_rng.derive("plan");
    RngStream op_rng = node_rng.derive("op");

    const PlanningOutcome plan = planning(sub, task.epsilon, params, plan_rng, node_scope);

    {
      SpnNode& node = tree.nodes[task.node];
      node.attributes = task.attributes;
      node.rows = n;
      node.epsilon = task.epsilon;
    }

    if (plan.op == Operation::kLeaf) {
      Histogram h = build_histogram(sub);
      h.counts = laplace_perturb(h.counts, kHistogramSensitivity, Budget{plan.eps_op}, op_rng,
                                 node_scope, "histogram");
      clamp_nonnegative(h.counts);
      tree.nodes[task.node].payload = LeafNode{std::move(h)};
      continue;
    }

    const std::size_t left = tree.add(SpnNode{});
    const std::size_t right = tree.add(SpnNode{});
    tree.nodes[task.node].left = left;
    tree.nodes[task.node].right = right;

    if (plan.op == Operation::kSum) {
      IndexPartition p =
          row_split(sub, Budget{plan.eps_op}, params.split_config(), op_rng, node_scope);
      if (node_scope) node_scope->mark(Composition::kParallel);
      ColumnTable lt = subtable(sub, p, Side::kLeft);
      ColumnTable rt = subtable(sub, p, Side::kRight);
      const double w = static_cast<double>(p.left.size()) / static_cast<double>(n);
      tree.nodes[task.node].payload = SumNode{std::move(p), w};
      work.push_back({right, std::move(rt), task.attributes, plan.eps_remaining,
                      child_path(task.path, "R")});
      work.push_back({left, std::move(lt), task.attributes, plan.eps_remaining,
                      child_path(task.path, "L")});
    } else {
      IndexPartition p = col_split(sub, Budget{plan.eps_op}, op_rng, node_scope);
      const double sl = effective_scale(n, p.left.size(), params.beta);
      const double sr = effective_scale(n, p.right.size(), params.beta);
      const double eps_left = plan.eps_remaining * sl / (sl + sr);
      const double eps_right = plan.eps_remaining - eps_left;
      ColumnTable lt = subtable(sub, p, Side::kLeft);
      ColumnTable rt = subtable(sub, p, Side::kRight);
      std::vector<std::size_t> la = pick(task.attributes, p.left);
      std::vector<std::size_t> ra = pick(task.attributes, p.right);
      tree.nodes[task.node].payload = ProductNode{std::move(p)};
      work.push_back({right, std::move(rt), std::move(ra), eps_right, child_path(task.path, "R")});
      work.push_back({left, std::move(lt), std::move(la), eps_left, child_path(task.path, "L")});
    }
  }
  return tree;
}

}  // namespace dpsynth
