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
#include "dpsynth/mechanisms.h"

#include <algorithm>
#include <cmath>
#include <string>

#include "dpsynth/error.h"

namespace dpsynth {

double laplace_noise(double scale, RngStream& rng) {
  const double u = rng.uniform_open() - 0.5;
  return -scale * std::copysign(1.0, u) * std::log1p(-2.0 * std::fabs(u));
}

std::vector<double> laplace_perturb(std::span<const double> values, double sensitivity,
                                    Budget budget, RngStream& rng, const LedgerScope* scope,
                                    std::string_view mechanism) {
  if (!(budget.epsilon > 0.0) || !std::isfinite(budget.epsilon)) {
    throw ConfigError("Laplace mechanism requires epsilon > 0, got " +
                      std::to_string(budget.epsilon));
  }
  if (!(sensitivity > 0.0)) {
    throw ConfigError("Laplace mechanism requires positive sensitivity");
  }
  const double scale = sensitivity / budget.epsilon;
  std::vector<double> out(values.begin(), values.end());
  for (double& v : out) v += laplace_noise(scale, rng);
  if (scope) scope->charge(mechanism, budget.epsilon);
  return out;
}

std::vector<double> exponential_probabilities(std::span<const double> scores,
                                              double sensitivity, double epsilon) {
  if (scores.empty()) throw ConfigError("exponential mechanism needs at least one candidate");
  if (!(sensitivity > 0.0)) throw ConfigError("exponential mechanism needs sensitivity > 0");
  if (!(epsilon >= 0.0)) throw ConfigError("exponential mechanism needs epsilon >= 0");
  const double lowest = *std::min_element(scores.begin(), scores.end());
  std::vector<double> p(scores.size());
  double total = 0.0;
  for (std::size_t j = 0; j < scores.size(); ++j) {
    p[j] = epsilon == 0.0 ? 1.0 : std::exp(-epsilon * (scores[j] - lowest) / (2.0 * sensitivity));
    total += p[j];
  }
  for (double& x : p) x /= total;
  return p;
}

std::size_t exponential_choose(std::span<const double> scores, double sensitivity,
                               Budget budget, RngStream& rng, const LedgerScope* scope,
                               std::string_view mechanism) {
  auto p = exponential_probabilities(scores, sensitivity, budget.epsilon);
  const double u = rng.uniform();
  double acc = 0.0;
  std::size_t chosen = p.size() - 1;
  for (std::size_t j = 0; j < p.size(); ++j) {
    acc += p[j];
    if (u < acc) {
      chosen = j;
      break;
    }
  }
  if (scope && budget.epsilon > 0.0) scope->charge(mechanism, budget.epsilon);
  return chosen;
}

}  // namespace dpsynth
