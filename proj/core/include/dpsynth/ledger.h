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
#ifndef DPSYNTH_LEDGER_H_
#define DPSYNTH_LEDGER_H_

#include <map>
#include <mutex>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

namespace dpsynth {

// A privacy budget in epsilon units.
struct Budget {
  double epsilon = 0.0;
};

// How the spends of a node's subtrees combine. Row-disjoint subtrees (sum
// nodes) compose in parallel (max); everything else sequentially (sum).
enum class Composition { kSequential, kParallel };

struct LedgerEntry {
  std::string table;
  // Independent spending stream within a table, e.g. "spn" or "fanout:<fk>".
  // Channels compose sequentially with each other.
  std::string channel;
  // '/'-separated position in the table's model tree ("" is the root).
  std::string path;
  std::string mechanism;
  double epsilon = 0.0;

  friend bool operator==(const LedgerEntry&, const LedgerEntry&) = default;
};

// Append-only record of every mechanism invocation. Appends are thread-safe.
class BudgetLedger {
 public:
  BudgetLedger() = default;
  BudgetLedger(const BudgetLedger& other);
  BudgetLedger& operator=(const BudgetLedger& other);

  void record(LedgerEntry entry);
  // Appends other's entries and composition marks, in order.
  void merge(const BudgetLedger& other);
  // Declares how subtrees below (table, path) compose. Default: sequential.
  void set_composition(std::string_view table, std::string_view path, Composition c);

  // Bottom-up composition of one channel: at each path, own spends plus the
  // children's totals combined by max (parallel) or sum (sequential).
  double compose(std::string_view table, std::string_view channel) const;
  // Sum over all channels of a table.
  double compose_table(std::string_view table) const;

  std::vector<std::string> channels(std::string_view table) const;
  std::vector<LedgerEntry> entries() const;
  std::size_t size() const;

  // [{table, channel, path, mechanism, epsilon}] plus composition marks.
  nlohmann::json to_json() const;
  static BudgetLedger from_json(const nlohmann::json& j);

 private:
  mutable std::mutex mu_;
  std::vector<LedgerEntry> entries_;
  std::map<std::pair<std::string, std::string>, Composition> composition_;
};

// A (ledger, table, channel, path) cursor handed to mechanisms so they can
// record their spend where they run.
class LedgerScope {
 public:
  LedgerScope(BudgetLedger& ledger, std::string table, std::string channel,
              std::string path = {});

  LedgerScope child(std::string_view component) const;
  LedgerScope with_channel(std::string channel) const;
  void charge(std::string_view mechanism, double epsilon) const;
  void mark(Composition c) const;

  BudgetLedger& ledger() const { return *ledger_; }
  const std::string& table() const { return table_; }
  const std::string& channel() const { return channel_; }
  const std::string& path() const { return path_; }

 private:
  BudgetLedger* ledger_;
  std::string table_;
  std::string channel_;
  std::string path_;
};

}  // namespace dpsynth

#endif  // DPSYNTH_LEDGER_H_
