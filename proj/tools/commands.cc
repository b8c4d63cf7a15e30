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
#include "commands.h"

#include <CLI11.hpp>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iomanip>
#include <iostream>
#include <map>
#include <random>
#include <sstream>

#include "dpsynth/csv_io.h"
#include "dpsynth/error.h"
#include "dpsynth/metrics.h"
#include "dpsynth/pipeline.h"
#include "dpsynth/query.h"
#include "dpsynth/rng.h"
#include "dpsynth/schema.h"
#include "dpsynth/spn.h"
#include "dpsynth/workload.h"

namespace dpsynth::cli {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr const char* kVersion = "0.1.0";

void write_text(const fs::path& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw DataError("cannot write '" + path.string() + "'");
  f << text;
  if (!f) throw DataError("failed writing '" + path.string() + "'");
}

json read_json(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw DataError("cannot open '" + path + "'");
  try {
    return json::parse(f);
  } catch (const json::exception& e) {
    throw DataError("'" + path + "' is not valid JSON: " + e.what());
  }
}

std::string hex64(std::uint64_t v) {
  std::ostringstream os;
  os << std::hex << std::setw(16) << std::setfill('0') << v;
  return os.str();
}

std::string plural(std::size_t n, const char* one, const char* many) {
  return std::to_string(n) + " " + (n == 1 ? one : many);
}

}  // namespace

std::vector<std::string> RunConfig::validate() const {
  std::vector<std::string> warnings;
  if (!(epsilon > 0.0) || !std::isfinite(epsilon)) {
    throw ConfigError("epsilon must be > 0 (got " + std::to_string(epsilon) + ")");
  }
  if (beta < 1) throw ConfigError("beta must be >= 1");
  if (iterations < 1) throw ConfigError("iterations must be >= 1");
  if (!(gamma >= 0.0 && gamma <= 1.0)) throw ConfigError("gamma must lie in [0, 1]");
  if (!(gamma1 > 0.0 && gamma1 < 1.0)) throw ConfigError("gamma1 must lie in (0, 1)");
  if (!(gamma2 >= 0.0 && gamma2 < 1.0)) throw ConfigError("gamma2 must lie in [0, 1)");
  if (!std::isfinite(alpha)) throw ConfigError("alpha must be finite");
  if (alpha < 0.0 || alpha > 1.0) {
    warnings.push_back("alpha = " + std::to_string(alpha) + " lies outside [0, 1]");
  }
  return warnings;
}

json RunConfig::parameters_json() const {
  return {{"epsilon", epsilon}, {"alpha", alpha},   {"beta", beta},
          {"gamma", gamma},     {"gamma1", gamma1}, {"gamma2", gamma2},
          {"iterations", iterations}};
}

std::uint64_t resolve_seed(const std::optional<std::uint64_t>& seed) {
  if (seed) return *seed;
  if (const char* env = std::getenv("DPSYNTH_SEED"); env && *env) {
    try {
      std::size_t used = 0;
      const unsigned long long v = std::stoull(env, &used, 10);
      if (used != std::string(env).size()) throw std::invalid_argument(env);
      return v;
    } catch (const std::exception&) {
      throw ConfigError("DPSYNTH_SEED must be an unsigned integer, got '" + std::string(env) + "'");
    }
  }
  std::random_device rd;
  return (static_cast<std::uint64_t>(rd()) << 32) ^ rd();
}

int cmd_synth(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  for (const auto& w : cfg.validate()) err << "warning: " << w << "\n";
  if (cfg.schema.empty() || cfg.data.empty() || cfg.out.empty()) {
    throw ConfigError("synth needs --schema, --data and --out");
  }
  const std::uint64_t seed = resolve_seed(cfg.seed);
  const Database db = load_database(cfg.schema, cfg.data);

  SynthesisConfig sc;
  sc.epsilon = cfg.epsilon;
  sc.gamma = cfg.gamma;
  sc.spn.alpha = cfg.alpha;
  sc.spn.beta = cfg.beta;
  sc.spn.gamma1 = cfg.gamma1;
  sc.spn.gamma2 = cfg.gamma2;
  sc.spn.iterations = cfg.iterations;
  sc.seed = seed;
  sc.threads = cfg.threads;
  const SynthesisResult result = synthesize(db, sc);
  for (const auto& w : result.allocation.warnings) err << "warning: " << w << "\n";
  if (result.sample_stats.degenerate_leaves > 0) {
    err << "warning: " << result.sample_stats.degenerate_leaves
        << " leaves had no positive weight after clamping and were sampled uniformly\n";
  }

  const fs::path dir(cfg.out);
  fs::create_directories(dir / "spn");
  save_database(result.synthetic, dir.string());
  write_text(dir / "schema.json", schema_to_json(db.schema).dump(2) + "\n");
  json tables = json::array();
  for (std::size_t i = 0; i < result.trees.size(); ++i) {
    const SpnTree& tree = result.trees[i];
    write_text(dir / "spn" / (tree.schema.name + ".json"), serialize_spn(tree));
    tables.push_back({{"name", tree.schema.name},
                      {"rows", result.synthetic.tables[i].row_count()},
                      {"spn_nodes", tree.nodes.size()},
                      {"depth", tree.depth()}});
  }
  const std::string ledger_text = result.ledger.to_json().dump(1) + "\n";
  write_text(dir / "ledger.json", ledger_text);

  json allocation = json::array();
  for (const auto& t : result.allocation.tables) {
    allocation.push_back({{"table", t.table},
                          {"spn_epsilon", t.spn.epsilon},
                          {"fanout_epsilon", t.fanout.epsilon},
                          {"multiplicity", t.multiplicity},
                          {"foreign_keys", t.foreign_keys}});
  }
  json manifest = {
      {"tool", "dpsynth"},
      {"version", kVersion},
      {"command", "synth"},
      {"seed", seed},
      {"parameters", cfg.parameters_json()},
      {"inputs", {{"schema", cfg.schema}, {"data", cfg.data}}},
      {"allocation",
       {{"tables", allocation},
        {"unspent", result.allocation.unspent},
        {"warnings", result.allocation.warnings}}},
      {"ledger",
       {{"file", "ledger.json"},
        {"entries", result.ledger.size()},
        {"fnv1a64", hex64(fnv1a64(ledger_text))},
        {"database_epsilon", result.spent_epsilon}}},
      {"tables", tables},
      {"degenerate_leaves", result.sample_stats.degenerate_leaves}};
  write_text(dir / "manifest.json", manifest.dump(2) + "\n");

  out << "synthesized " << plural(db.tables.size(), "table", "tables") << " into " << cfg.out
      << " (seed " << seed << ")\n";
  out << "privacy spend " << result.spent_epsilon << " of epsilon " << cfg.epsilon << "\n";
  return kExitOk;
}

int cmd_eval(const EvalOptions& opts, std::ostream& out, std::ostream& err) {
  if (opts.original.empty() || opts.synthetic.empty()) {
    throw ConfigError("eval needs --orig and --synth");
  }
  if (!opts.workload.empty() && opts.generate > 0) {
    throw ConfigError("use either --workload or --generate, not both");
  }
  const std::string schema_path =
      opts.schema.empty() ? (fs::path(opts.synthetic) / "schema.json").string() : opts.schema;
  const DatabaseSchema schema = load_schema(schema_path);
  const Database original = load_database(schema, opts.original);
  const Database synthetic = load_database(schema, opts.synthetic);
  const std::uint64_t seed = resolve_seed(opts.seed);

  std::vector<ConjunctiveQuery> workload;
  std::string source = "none";
  if (!opts.workload.empty()) {
    workload = workload_from_json(read_json(opts.workload), schema);
    source = opts.workload;
  } else if (opts.generate > 0) {
    workload = generate_workload(original, opts.generate, seed);
    source = "generated";
  }

  std::size_t widest = 0;
  for (std::size_t i = 0; i < schema.tables.size(); ++i) {
    if (original.tables[i].row_count() > 0) {
      widest = std::max(widest, schema.tables[i].model_attribute_indices().size());
    }
  }
  std::vector<std::size_t> lambdas;
  for (std::size_t l : opts.lambdas) {
    if (l < 1) throw ConfigError("lambda must be >= 1");
    if (l > widest) {
      err << "warning: no table has " << l << " non-key attributes; skipping lambda " << l << "\n";
      continue;
    }
    lambdas.push_back(l);
  }

  EvalReport report = evaluate(original, synthetic, lambdas, workload, seed, opts.threads);
  report.metadata["workload"] = source;

  out << "lambda  kld\n";
  for (const auto& [l, v] : report.kld) {
    out << std::left << std::setw(8) << l << std::setprecision(6) << v << "\n";
  }
  if (!report.queries.empty()) {
    const auto& s = report.qerror_summary;
    out << "q-error over " << s.count << " queries: mean " << s.mean << ", median " << s.median
        << ", p75 " << s.p75 << ", max " << s.max << "\n";
  }
  if (!opts.report.empty()) write_text(opts.report, report.to_json(schema).dump(2) + "\n");
  return kExitOk;
}

int cmd_workload(const WorkloadOptions& opts, std::ostream& out, std::ostream&) {
  if (opts.schema.empty() || opts.data.empty()) throw ConfigError("workload needs --schema and --data");
  const Database db = load_database(opts.schema, opts.data);
  const auto w = generate_workload(db, opts.count, resolve_seed(opts.seed));
  const std::string text = workload_to_json(w, db.schema).dump(2) + "\n";
  if (opts.out.empty()) {
    out << text;
  } else {
    write_text(opts.out, text);
    out << "wrote " << plural(w.size(), "query", "queries") << " to " << opts.out << "\n";
  }
  return kExitOk;
}

int cmd_inspect(const std::string& spn_file, std::ostream& out, std::ostream& err) {
  std::ifstream f(spn_file, std::ios::binary);
  if (!f) throw DataError("cannot open '" + spn_file + "'");
  std::stringstream buf;
  buf << f.rdbuf();
  const SpnTree tree = deserialize_spn(buf.str());
  const std::size_t m = tree.schema.model_attribute_indices().size();
  out << "table " << tree.schema.name << ": " << plural(tree.rows, "row", "rows") << ", "
      << plural(m, "attribute", "attributes") << ", beta " << tree.beta << "\n";
  if (tree.empty()) {
    out << "shape: empty\n";
    return kExitOk;
  }

  std::vector<std::string> parts;
  const std::size_t sums = tree.count(NodeKind::kSum);
  const std::size_t products = tree.count(NodeKind::kProduct);
  const std::size_t leaves = tree.count(NodeKind::kLeaf);
  const std::size_t fanouts = tree.count(NodeKind::kFanoutLeaf);
  if (sums) parts.push_back(plural(sums, "sum", "sums"));
  if (products) parts.push_back(plural(products, "product", "products"));
  if (leaves) parts.push_back(plural(leaves, "leaf", "leaves"));
  if (fanouts) parts.push_back(plural(fanouts, "fanout leaf", "fanout leaves"));
  out << "shape: ";
  for (std::size_t i = 0; i < parts.size(); ++i) out << (i ? ", " : "") << parts[i];
  out << ", depth " << tree.depth() << "\n";

  const auto paths = tree.paths();
  out << "leaves:\n";
  std::vector<std::size_t> stack{tree.root};
  while (!stack.empty()) {
    const std::size_t i = stack.back();
    stack.pop_back();
    const SpnNode& n = tree.nodes[i];
    if (!n.is_leaf()) {
      stack.push_back(n.right);
      stack.push_back(n.left);
      continue;
    }
    out << "  " << std::left << std::setw(16) << (paths[i].empty() ? "(root)" : paths[i]) << " "
        << std::setw(20) << tree.schema.attributes[n.attributes[0]].name << " "
        << (n.kind() == NodeKind::kLeaf ? "histogram" : "fanout   ") << " rows " << n.rows
        << " epsilon " << n.epsilon << "\n";
  }

  if (leaves > 0) {
    // Each fanout augmentation adds two nodes to the learned tree.
    const std::size_t learned = tree.nodes.size() - 2 * fanouts;
    const double bound = effective_scale(tree.rows, m, tree.beta);
    const bool ok = static_cast<double>(learned) <= bound + 1e-9;
    out << "node bound: " << learned << " nodes " << (ok ? "<=" : ">") << " sigma " << bound
        << (ok ? " (ok)" : " (VIOLATED)") << "\n";
    if (!ok) {
      err << "error: node count exceeds the scale bound\n";
      return kExitBudget;
    }
  }
  return kExitOk;
}

namespace {

// Applies --config JSON values to options the command line left unset.
class ConfigBinder {
 public:
  template <typename T>
  void bind(CLI::Option* opt, const std::string& key, T& target) {
    bindings_[key] = {opt, [&target, key](const json& v) {
                        try {
                          target = v.get<T>();
                        } catch (const json::exception&) {
                          throw ConfigError("config key '" + key + "' has the wrong type");
                        }
                      }};
  }
  template <typename T>
  void bind(CLI::Option* opt, const std::string& key, std::optional<T>& target) {
    bindings_[key] = {opt, [&target, key](const json& v) {
                        try {
                          target = v.get<T>();
                        } catch (const json::exception&) {
                          throw ConfigError("config key '" + key + "' has the wrong type");
                        }
                      }};
  }

  void apply(const std::string& path) const {
    if (path.empty()) return;
    std::ifstream f(path, std::ios::binary);
    if (!f) throw ConfigError("cannot open config file '" + path + "'");
    json j;
    try {
      j = json::parse(f);
    } catch (const json::exception& e) {
      throw ConfigError("config file '" + path + "' is not valid JSON: " + e.what());
    }
    if (!j.is_object()) throw ConfigError("config file must hold a JSON object");
    for (const auto& [key, value] : j.items()) {
      auto it = bindings_.find(key);
      if (it == bindings_.end()) throw ConfigError("unknown config key '" + key + "'");
      if (it->second.option->count() == 0) it->second.assign(value);
    }
  }

 private:
  struct Binding {
    CLI::Option* option;
    std::function<void(const json&)> assign;
  };
  std::map<std::string, Binding> bindings_;
};

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Differentially private multi-table database synthesis"};
  app.require_subcommand(1);
  app.set_version_flag("--version", kVersion);

  RunConfig synth_cfg;
  std::string synth_config;
  ConfigBinder synth_bind;
  auto* synth = app.add_subcommand("synth", "Learn private models and sample a synthetic database");
  synth->add_option("--config", synth_config, "JSON file with option values (flags win)");
  synth_bind.bind(synth->add_option("--schema", synth_cfg.schema, "Schema JSON file"), "schema",
                  synth_cfg.schema);
  synth_bind.bind(synth->add_option("--data", synth_cfg.data, "Directory of <table>.csv files"),
                  "data", synth_cfg.data);
  synth_bind.bind(synth->add_option("--out", synth_cfg.out, "Output directory"), "out",
                  synth_cfg.out);
  synth_bind.bind(synth->add_option("--epsilon", synth_cfg.epsilon, "Total privacy budget"),
                  "epsilon", synth_cfg.epsilon);
  synth_bind.bind(synth->add_option("--alpha", synth_cfg.alpha, "NMI threshold for column splits"),
                  "alpha", synth_cfg.alpha);
  synth_bind.bind(synth->add_option("--beta", synth_cfg.beta, "Minimum rows per cluster"), "beta",
                  synth_cfg.beta);
  synth_bind.bind(synth->add_option("--gamma", synth_cfg.gamma, "Budget share for SPN construction"),
                  "gamma", synth_cfg.gamma);
  synth_bind.bind(synth->add_option("--gamma1", synth_cfg.gamma1, "Budget share for correlation trials"),
                  "gamma1", synth_cfg.gamma1);
  synth_bind.bind(synth->add_option("--gamma2", synth_cfg.gamma2, "Trial share for the column split"),
                  "gamma2", synth_cfg.gamma2);
  synth_bind.bind(synth->add_option("--iterations", synth_cfg.iterations, "Row split iterations"),
                  "iterations", synth_cfg.iterations);
  synth_bind.bind(synth->add_option("--seed", synth_cfg.seed, "Random seed (else DPSYNTH_SEED)"),
                  "seed", synth_cfg.seed);
  synth_bind.bind(synth->add_option("--threads", synth_cfg.threads, "Worker threads (0: all cores)"),
                  "threads", synth_cfg.threads);

  EvalOptions eval_opts;
  std::string eval_config;
  ConfigBinder eval_bind;
  auto* eval = app.add_subcommand("eval", "Compare a synthetic database with the original");
  eval->add_option("--config", eval_config, "JSON file with option values (flags win)");
  eval_bind.bind(eval->add_option("--schema", eval_opts.schema, "Schema JSON (default <synth>/schema.json)"),
                 "schema", eval_opts.schema);
  eval_bind.bind(eval->add_option("--orig", eval_opts.original, "Original CSV directory"), "orig",
                 eval_opts.original);
  eval_bind.bind(eval->add_option("--synth", eval_opts.synthetic, "Synthetic CSV directory"),
                 "synth", eval_opts.synthetic);
  eval_bind.bind(eval->add_option("--workload", eval_opts.workload, "Workload JSON file"),
                 "workload", eval_opts.workload);
  eval_bind.bind(eval->add_option("--generate", eval_opts.generate, "Generate this many queries"),
                 "generate", eval_opts.generate);
  eval_bind.bind(eval->add_option("--lambda", eval_opts.lambdas, "Marginal widths for KLD")
                     ->delimiter(','),
                 "lambda", eval_opts.lambdas);
  eval_bind.bind(eval->add_option("--seed", eval_opts.seed, "Random seed (else DPSYNTH_SEED)"),
                 "seed", eval_opts.seed);
  eval_bind.bind(eval->add_option("--threads", eval_opts.threads, "Worker threads (0: all cores)"),
                 "threads", eval_opts.threads);
  eval_bind.bind(eval->add_option("--report", eval_opts.report, "Write the JSON report here"),
                 "report", eval_opts.report);

  WorkloadOptions wl_opts;
  std::string wl_config;
  ConfigBinder wl_bind;
  auto* wl = app.add_subcommand("workload", "Generate a random join-query workload");
  wl->add_option("--config", wl_config, "JSON file with option values (flags win)");
  wl_bind.bind(wl->add_option("--schema", wl_opts.schema, "Schema JSON file"), "schema",
               wl_opts.schema);
  wl_bind.bind(wl->add_option("--data", wl_opts.data, "Directory of <table>.csv files"), "data",
               wl_opts.data);
  wl_bind.bind(wl->add_option("--count", wl_opts.count, "Number of queries"), "count",
               wl_opts.count);
  wl_bind.bind(wl->add_option("--seed", wl_opts.seed, "Random seed (else DPSYNTH_SEED)"), "seed",
               wl_opts.seed);
  wl_bind.bind(wl->add_option("--out", wl_opts.out, "Output file (default stdout)"), "out",
               wl_opts.out);

  std::string spn_file;
  auto* inspect = app.add_subcommand("inspect", "Summarize a serialized SPN");
  inspect->add_option("spn", spn_file, "SPN JSON file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp& e) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::CallForVersion& e) {
    out << kVersion << "\n";
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitConfig;
  }

  try {
    if (*synth) {
      synth_bind.apply(synth_config);
      return cmd_synth(synth_cfg, out, err);
    }
    if (*eval) {
      eval_bind.apply(eval_config);
      return cmd_eval(eval_opts, out, err);
    }
    if (*wl) {
      wl_bind.apply(wl_config);
      return cmd_workload(wl_opts, out, err);
    }
    return cmd_inspect(spn_file, out, err);
  } catch (const ConfigError& e) {
    err << "configuration error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const DataError& e) {
    err << "data error: " << e.what() << "\n";
    return kExitData;
  } catch (const BudgetError& e) {
    err << "privacy budget error: " << e.what() << "\n";
    return kExitBudget;
  } catch (const fs::filesystem_error& e) {
    err << "data error: " << e.what() << "\n";
    return kExitData;
  } catch (const std::invalid_argument& e) {
    err << "configuration error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitData;
  }
}

}  // namespace dpsynth::cli
