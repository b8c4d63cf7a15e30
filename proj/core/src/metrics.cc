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
#include "dpsynth/metrics.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <set>
#include <string>
#include <unordered_map>

#include "dpsynth/error.h"
#include "dpsynth/histogram.h"
#include "dpsynth/parallel.h"
#include "dpsynth/rng.h"

namespace dpsynth {

double kl_divergence(const std::vector<double>& p_counts, const std::vector<double>& q_counts) {
  if (p_counts.size() != q_counts.size() || p_counts.empty()) {
    throw std::invalid_argument("kl_divergence needs two equally sized, non-empty count vectors");
  }
  const double k = static_cast<double>(p_counts.size());
  const double zp = std::accumulate(p_counts.begin(), p_counts.end(), 0.0) + k * kKldSmoothing;
  const double zq = std::accumulate(q_counts.begin(), q_counts.end(), 0.0) + k * kKldSmoothing;
  double d = 0.0;
  for (std::size_t i = 0; i < p_counts.size(); ++i) {
    const double p = (p_counts[i] + kKldSmoothing) / zp;
    const double q = (q_counts[i] + kKldSmoothing) / zq;
    d += p * std::log(p / q);
  }
  return std::max(d, 0.0);
}

namespace {

std::vector<std::vector<std::uint32_t>> bin_codes(const ColumnTable& t,
                                                  const std::vector<std::size_t>& attrs) {
  std::vector<std::vector<std::uint32_t>> out;
  for (std::size_t a : attrs) {
    const BinLayout layout = bin_layout(t.schema().attributes[a]);
    auto col = t.column(a);
    std::vector<std::uint32_t> codes(col.size());
    for (std::size_t r = 0; r < col.size(); ++r) {
      codes[r] = static_cast<std::uint32_t>(layout.bin_of(col[r]));
    }
    out.push_back(std::move(codes));
  }
  return out;
}

double binomial(std::size_t m, std::size_t k) {
  double c = 1.0;
  for (std::size_t i = 1; i <= k; ++i) c = c * static_cast<double>(m - k + i) / static_cast<double>(i);
  return std::round(c);
}

std::vector<std::vector<std::size_t>> marginal_subsets(std::size_t m, std::size_t lambda,
                                                       RngStream& rng) {
  std::vector<std::vector<std::size_t>> out;
  if (binomial(m, lambda) <= static_cast<double>(kMaxMarginals)) {
    std::vector<std::size_t> pick(lambda);
    std::iota(pick.begin(), pick.end(), 0);
    while (true) {
      out.push_back(pick);
      std::size_t i = lambda;
      while (i > 0 && pick[i - 1] == m - lambda + i - 1) --i;
      if (i == 0) break;
      ++pick[i - 1];
      for (std::size_t j = i; j < lambda; ++j) pick[j] = pick[j - 1] + 1;
    }
    return out;
  }
  std::set<std::vector<std::size_t>> chosen;
  std::vector<std::size_t> idx(m);
  while (chosen.size() < kMaxMarginals) {
    std::iota(idx.begin(), idx.end(), 0);
    for (std::size_t k = 0; k < lambda; ++k) std::swap(idx[k], idx[k + rng.uniform_index(m - k)]);
    std::vector<std::size_t> s(idx.begin(), idx.begin() + lambda);
    std::sort(s.begin(), s.end());
    chosen.insert(std::move(s));
  }
  return {chosen.begin(), chosen.end()};
}

// Joint bin-tuple counts of both tables over the same cells.
double marginal_kld(const std::vector<std::vector<std::uint32_t>>& orig,
                    const std::vector<std::vector<std::uint32_t>>& synth,
                    const std::vector<std::size_t>& radix, const std::vector<std::size_t>& subset) {
  double space = 1.0;
  for (std::size_t a : subset) space *= static_cast<double>(radix[a]);
  const std::size_t n_orig = orig.empty() ? 0 : orig[0].size();
  const std::size_t n_synth = synth.empty() ? 0 : synth[0].size();
  std::vector<double> p, q;
  if (space < 9.0e15) {
    auto key = [&](const std::vector<std::vector<std::uint32_t>>& codes, std::size_t r) {
      std::uint64_t k = 0;
      for (std::size_t a : subset) k = k * radix[a] + codes[a][r];
      return k;
    };
    std::unordered_map<std::uint64_t, std::size_t> cell;
    cell.reserve(std::min<std::size_t>(n_orig + n_synth, 1 << 20));
    auto slot = [&](std::uint64_t k) {
      auto [it, fresh] = cell.try_emplace(k, p.size());
      if (fresh) {
        p.push_back(0.0);
        q.push_back(0.0);
      }
      return it->second;
    };
    for (std::size_t r = 0; r < n_orig; ++r) p[slot(key(orig, r))] += 1.0;
    for (std::size_t r = 0; r < n_synth; ++r) q[slot(key(synth, r))] += 1.0;
  } else {
    auto key = [&](const std::vector<std::vector<std::uint32_t>>& codes, std::size_t r) {
      std::string k;
      for (std::size_t a : subset) k.append(reinterpret_cast<const char*>(&codes[a][r]), 4);
      return k;
    };
    std::unordered_map<std::string, std::size_t> cell;
    auto slot = [&](std::string k) {
      auto [it, fresh] = cell.try_emplace(std::move(k), p.size());
      if (fresh) {
        p.push_back(0.0);
        q.push_back(0.0);
      }
      return it->second;
    };
    for (std::size_t r = 0; r < n_orig; ++r) p[slot(key(orig, r))] += 1.0;
    for (std::size_t r = 0; r < n_synth; ++r) q[slot(key(synth, r))] += 1.0;
  }
  return kl_divergence(p, q);
}

}  // namespace

double kld_lambda(const Database& original, const Database& synthetic, std::size_t lambda,
                  std::uint64_t seed) {
  if (lambda < 1) throw ConfigError("lambda must be >= 1");
  if (original.schema != synthetic.schema) throw DataError("schemas of the two databases differ");
  RngStream rng(seed, "kld/" + std::to_string(lambda));
  double total = 0.0;
  std::size_t marginals = 0;
  for (std::size_t i = 0; i < original.schema.tables.size(); ++i) {
    const TableSchema& ts = original.schema.tables[i];
    const auto attrs = ts.model_attribute_indices();
    if (lambda > attrs.size() || original.tables[i].row_count() == 0) continue;
    const auto orig = bin_codes(original.tables[i], attrs);
    const auto synth = bin_codes(synthetic.tables[i], attrs);
    std::vector<std::size_t> radix;
    for (std::size_t a : attrs) radix.push_back(bin_layout(ts.attributes[a]).count);
    RngStream table_rng = rng.derive(ts.name);
    for (const auto& subset : marginal_subsets(attrs.size(), lambda, table_rng)) {
      total += marginal_kld(orig, synth, radix, subset);
      ++marginals;
    }
  }
  if (marginals == 0) {
    throw ConfigError("no table has " + std::to_string(lambda) + " non-key attributes");
  }
  return total / static_cast<double>(marginals);
}

double qerror(std::uint64_t original, std::uint64_t synthetic) {
  double a = static_cast<double>(original);
  double b = static_cast<double>(synthetic);
  if (original == 0 || synthetic == 0) {
    a += 1.0;
    b += 1.0;
  }
  return std::max(a / b, b / a);
}

double percentile(std::vector<double> values, double p) {
  if (values.empty()) return std::numeric_limits<double>::quiet_NaN();
  std::sort(values.begin(), values.end());
  const double pos = p * static_cast<double>(values.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(pos));
  const std::size_t hi = std::min(lo + 1, values.size() - 1);
  return values[lo] + (pos - static_cast<double>(lo)) * (values[hi] - values[lo]);
}

SummaryStats summarize(const std::vector<double>& values) {
  SummaryStats s;
  s.count = values.size();
  if (values.empty()) return s;
  s.mean = std::accumulate(values.begin(), values.end(), 0.0) / static_cast<double>(values.size());
  s.median = percentile(values, 0.5);
  s.p75 = percentile(values, 0.75);
  s.max = *std::max_element(values.begin(), values.end());
  return s;
}

nlohmann::json EvalReport::to_json(const DatabaseSchema& schema) const {
  nlohmann::json j;
  j["kld"] = nlohmann::json::object();
  for (const auto& [lambda, v] : kld) j["kld"][std::to_string(lambda)] = v;
  j["qerror"] = {{"mean", qerror_summary.mean},
                 {"median", qerror_summary.median},
                 {"p75", qerror_summary.p75},
                 {"max", qerror_summary.max},
                 {"count", qerror_summary.count}};
  j["queries"] = nlohmann::json::array();
  for (const auto& q : queries) {
    j["queries"].push_back({{"query", query_to_json(q.query, schema)},
                            {"original", q.original},
                            {"synthetic", q.synthetic},
                            {"qerror", q.qerror}});
  }
  j["metadata"] = metadata;
  return j;
}

EvalReport evaluate(const Database& original, const Database& synthetic,
                    const std::vector<std::size_t>& lambdas,
                    const std::vector<ConjunctiveQuery>& workload, std::uint64_t seed,
                    std::size_t threads) {
  if (original.schema != synthetic.schema) throw DataError("schemas of the two databases differ");
  EvalReport report;
  for (std::size_t lambda : lambdas) report.kld[lambda] = kld_lambda(original, synthetic, lambda, seed);
  report.queries.resize(workload.size());
  parallel_for(workload.size(), threads, [&](std::size_t i) {
    QueryOutcome& out = report.queries[i];
    out.query = workload[i];
    out.original = cardinality(workload[i], original);
    out.synthetic = cardinality(workload[i], synthetic);
    out.qerror = qerror(out.original, out.synthetic);
  });
  std::vector<double> errors;
  for (const auto& q : report.queries) errors.push_back(q.qerror);
  report.qerror_summary = summarize(errors);
  report.metadata = {{"seed", seed}, {"lambdas", lambdas}, {"workload_size", workload.size()}};
  return report;
}

}  // namespace dpsynth
