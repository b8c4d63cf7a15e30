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
#include "dpsynth/pipeline.h"

#include <cmath>
#include <string>

#include "dpsynth/error.h"
#include "dpsynth/parallel.h"

namespace dpsynth {

void SynthesisConfig::validate() const {
  if (!(epsilon > 0.0) || !std::isfinite(epsilon)) {
    throw ConfigError("epsilon must be a finite value > 0");
  }
  if (!(gamma >= 0.0 && gamma <= 1.0)) throw ConfigError("gamma must lie in [0, 1]");
  spn.validate();
}

namespace {

std::vector<std::vector<double>> key_domains(const Database& db) {
  std::vector<std::vector<double>> out;
  for (const auto& t : db.tables) {
    out.push_back(t.schema().primary_key_index() ? primary_key_values(t) : std::vector<double>{});
  }
  return out;
}

SpnTree model_for(const Database& db, std::size_t table, const TableBudget& budget,
                  const SynthesisConfig& cfg, const std::vector<std::vector<double>>& domains,
                  BudgetLedger& ledger) {
  const ColumnTable& t = db.tables.at(table);
  const TableSchema& schema = t.schema();
  RngStream rng(cfg.seed, "model/" + schema.name);
  LedgerScope scope(ledger, schema.name, "spn");

  SpnTree tree;
  tree.schema = schema;
  tree.beta = cfg.spn.beta;
  tree.rows = t.row_count();
  if (t.row_count() == 0) return tree;

  if (!schema.model_attribute_indices().empty()) {
    if (!(budget.spn.epsilon > 0.0)) {
      throw ConfigError("table '" + schema.name + "' has no SPN budget (gamma = 0)");
    }
    RngStream spn_rng = rng.derive("spn");
    tree = priv_spn(t, budget.spn.epsilon, cfg.spn, spn_rng, &scope);
  }
  for (std::size_t fk : schema.foreign_key_indices()) {
    if (!(budget.fanout.epsilon > 0.0)) {
      throw ConfigError("table '" + schema.name + "' has no fanout budget (gamma = 1)");
    }
    const AttributeSpec& spec = schema.attributes[fk];
    const auto target = db.schema.index_of(spec.fk_target);
    RngStream fan_rng = rng.derive("fanout");
    tree = priv_fanout(t, tree, spec.name, domains.at(*target), budget.fanout.epsilon, fan_rng,
                       &scope);
  }
  return tree;
}

}  // namespace

SpnTree build_table_model(const Database& db, std::size_t table, const TableBudget& budget,
                          const SynthesisConfig& cfg, BudgetLedger& ledger) {
  cfg.validate();
  return model_for(db, table, budget, cfg, key_domains(db), ledger);
}

SynthesisResult synthesize(const Database& db, const SynthesisConfig& cfg) {
  cfg.validate();
  SynthesisResult result;
  result.allocation = allocate_database_budget(db.schema, Budget{cfg.epsilon}, cfg.gamma);
  const auto domains = key_domains(db);
  const std::size_t count = db.tables.size();

  result.trees.resize(count);
  std::vector<BudgetLedger> ledgers(count);
  parallel_for(count, cfg.threads, [&](std::size_t i) {
    result.trees[i] = model_for(db, i, result.allocation.tables[i], cfg, domains, ledgers[i]);
  });
  for (const auto& l : ledgers) result.ledger.merge(l);

  result.spent_epsilon = database_epsilon(result.ledger, db.schema);
  if (result.spent_epsilon > cfg.epsilon * (1.0 + 1e-9)) {
    throw BudgetError("composed privacy spend " + std::to_string(result.spent_epsilon) +
                      " exceeds the budget " + std::to_string(cfg.epsilon));
  }

  RngStream sample_rng(cfg.seed, "sample");
  result.synthetic =
      assemble_database(db.schema, result.trees, domains, sample_rng, &result.sample_stats,
                        cfg.threads);
  return result;
}

}  // namespace dpsynth
