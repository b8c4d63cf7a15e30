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
#include "dpsynth/ledger.h"

#include <algorithm>
#include <set>

#include "dpsynth/error.h"

namespace dpsynth {
namespace {

struct PathNode {
  double own = 0.0;
  std::map<std::string, PathNode> kids;
};

double fold(const PathNode& node, const std::string& path, std::string_view table,
            const std::map<std::pair<std::string, std::string>, Composition>& marks) {
  double combined = 0.0;
  auto it = marks.find({std::string(table), path});
  const bool parallel = it != marks.end() && it->second == Composition::kParallel;
  for (const auto& [name, kid] : node.kids) {
    double v = fold(kid, path.empty() ? name : path + "/" + name, table, marks);
    combined = parallel ? std::max(combined, v) : combined + v;
  }
  return node.own + combined;
}

}  // namespace

BudgetLedger::BudgetLedger(const BudgetLedger& other) {
  std::lock_guard<std::mutex> lock(other.mu_);
  entries_ = other.entries_;
  composition_ = other.composition_;
}

BudgetLedger& BudgetLedger::operator=(const BudgetLedger& other) {
  if (this == &other) return *this;
  std::scoped_lock lock(mu_, other.mu_);
  entries_ = other.entries_;
  composition_ = other.composition_;
  return *this;
}

void BudgetLedger::record(LedgerEntry entry) {
  if (!(entry.epsilon >= 0.0)) {
    throw BudgetError("ledger entry with negative or NaN epsilon: " + entry.mechanism);
  }
  std::lock_guard<std::mutex> lock(mu_);
  entries_.push_back(std::move(entry));
}

void BudgetLedger::merge(const BudgetLedger& other) {
  if (this == &other) return;
  std::scoped_lock lock(mu_, other.mu_);
  entries_.insert(entries_.end(), other.entries_.begin(), other.entries_.end());
  for (const auto& [key, c] : other.composition_) composition_[key] = c;
}

void BudgetLedger::set_composition(std::string_view table, std::string_view path,
                                   Composition c) {
  std::lock_guard<std::mutex> lock(mu_);
  composition_[{std::string(table), std::string(path)}] = c;
}

double BudgetLedger::compose(std::string_view table, std::string_view channel) const {
  std::lock_guard<std::mutex> lock(mu_);
  PathNode root;
  for (const auto& e : entries_) {
    if (e.table != table || e.channel != channel) continue;
    PathNode* node = &root;
    std::string_view rest = e.path;
    while (!rest.empty()) {
      auto slash = rest.find('/');
      auto part = rest.substr(0, slash);
      node = &node->kids[std::string(part)];
      rest = slash == std::string_view::npos ? std::string_view{} : rest.substr(slash + 1);
    }
    node->own += e.epsilon;
  }
  return fold(root, "", table, composition_);
}

double BudgetLedger::compose_table(std::string_view table) const {
  double total = 0.0;
  for (const auto& ch : channels(table)) total += compose(table, ch);
  return total;
}

std::vector<std::string> BudgetLedger::channels(std::string_view table) const {
  std::lock_guard<std::mutex> lock(mu_);
  std::set<std::string> out;
  for (const auto& e : entries_) {
    if (e.table == table) out.insert(e.channel);
  }
  return {out.begin(), out.end()};
}

std::vector<LedgerEntry> BudgetLedger::entries() const {
  std::lock_guard<std::mutex> lock(mu_);
  return entries_;
}

std::size_t BudgetLedger::size() const {
  std::lock_guard<std::mutex> lock(mu_);
  return entries_.size();
}

nlohmann::json BudgetLedger::to_json() const {
  std::lock_guard<std::mutex> lock(mu_);
  nlohmann::json entries = nlohmann::json::array();
  for (const auto& e : entries_) {
    entries.push_back({{"table", e.table},
                       {"channel", e.channel},
                       {"path", e.path},
                       {"mechanism", e.mechanism},
                       {"epsilon", e.epsilon}});
  }
  nlohmann::json parallel = nlohmann::json::array();
  for (const auto& [key, c] : composition_) {
    if (c == Composition::kParallel) parallel.push_back({{"table", key.first}, {"path", key.second}});
  }
  return {{"entries", entries}, {"parallel_nodes", parallel}};
}

BudgetLedger BudgetLedger::from_json(const nlohmann::json& j) {
  BudgetLedger ledger;
  try {
    for (const auto& e : j.at("entries")) {
      ledger.record({e.at("table").get<std::string>(), e.at("channel").get<std::string>(),
                     e.at("path").get<std::string>(), e.at("mechanism").get<std::string>(),
                     e.at("epsilon").get<double>()});
    }
    for (const auto& p : j.value("parallel_nodes", nlohmann::json::array())) {
      ledger.set_composition(p.at("table").get<std::string>(), p.at("path").get<std::string>(),
                             Composition::kParallel);
    }
  } catch (const nlohmann::json::exception& e) {
    throw DataError(std::string("malformed ledger: ") + e.what());
  }
  return ledger;
}

LedgerScope::LedgerScope(BudgetLedger& ledger, std::string table, std::string channel,
                         std::string path)
    : ledger_(&ledger),
      table_(std::move(table)),
      channel_(std::move(channel)),
      path_(std::move(path)) {}

LedgerScope LedgerScope::child(std::string_view component) const {
  return LedgerScope(*ledger_, table_, channel_,
                     path_.empty() ? std::string(component)
                                   : path_ + "/" + std::string(component));
}

LedgerScope LedgerScope::with_channel(std::string channel) const {
  return LedgerScope(*ledger_, table_, std::move(channel), path_);
}

void LedgerScope::charge(std::string_view mechanism, double epsilon) const {
  ledger_->record({table_, channel_, path_, std::string(mechanism), epsilon});
}

void LedgerScope::mark(Composition c) const { ledger_->set_composition(table_, path_, c); }

}  // namespace dpsynth
