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
#include <string>

#include "dpsynth/entropy.h"
#include "dpsynth/error.h"
#include "dpsynth/mechanisms.h"
#include "dpsynth/spn.h"

namespace dpsynth {

PlanningOutcome planning(const ColumnTable& t, double epsilon, const SpnParams& params,
                         RngStream& rng, const LedgerScope* scope) {
  params.validate();
  if (!(epsilon >= 0.0) || !std::isfinite(epsilon)) {
    throw ConfigError("planning requires a finite epsilon >= 0");
  }
  const std::size_t n = t.row_count();
  const std::size_t m = t.column_count();
  if (m == 0) throw std::invalid_argument("planning needs at least one attribute");

  PlanningOutcome out;
  if (m == 1) {
    out.op = Operation::kLeaf;
    out.eps_op = epsilon;
    return out;
  }

  const double sigma = effective_scale(n, m, params.beta);
  const bool can_split_rows = n >= 2 * params.beta;
  if (can_split_rows) {
    // Correlation trial.
    out.trial_ran = true;
    out.eps_eval = epsilon * params.gamma1 / sigma;
    RngStream split_rng = rng.derive("trial_split");
    const IndexPartition p =
        col_split_detailed(t, Budget{out.eps_eval * params.gamma2}, split_rng, nullptr).partition;
    if (scope && params.gamma2 > 0.0) {
      scope->charge("corr_trial/col_split", out.eps_eval * params.gamma2);
    }
    const double eps_nmi = out.eps_eval * (1.0 - params.gamma2);
    RngStream nmi_rng = rng.derive("trial_nmi");
    const double value = nmi(t, p);
    out.noisy_nmi = laplace_perturb(std::span<const double>(&value, 1), nmi_sensitivity(n),
                                    Budget{eps_nmi}, nmi_rng, scope, "corr_trial/nmi")[0];
    out.op = out.noisy_nmi <= params.alpha ? Operation::kProduct : Operation::kSum;
  } else {
    out.op = Operation::kProduct;
  }

  if (out.op == Operation::kProduct && m == 2) {
    out.eps_op = 0.0;
  } else {
    out.eps_op = epsilon / sigma - out.eps_eval;
  }
  if (out.eps_op < 0.0) {
    throw ConfigError("operation budget is negative; gamma1 must not exceed 1");
  }
  out.eps_remaining = epsilon - out.eps_eval - out.eps_op;
  return out;
}

}  // namespace dpsynth
