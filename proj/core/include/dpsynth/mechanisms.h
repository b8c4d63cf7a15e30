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
#ifndef DPSYNTH_MECHANISMS_H_
#define DPSYNTH_MECHANISMS_H_

#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

#include "dpsynth/ledger.h"
#include "dpsynth/rng.h"

namespace dpsynth {

// One Laplace(0, scale) draw by inverse CDF.
double laplace_noise(double scale, RngStream& rng);

// values[i] + Laplace(sensitivity / epsilon), i.i.d. Refuses epsilon <= 0 or
// sensitivity <= 0 with ConfigError. Charges epsilon to scope if given.
std::vector<double> laplace_perturb(std::span<const double> values, double sensitivity,
                                    Budget budget, RngStream& rng,
                                    const LedgerScope* scope = nullptr,
                                    std::string_view mechanism = "laplace");

// Selection probabilities exp(-eps * s_j / (2 * sensitivity)), normalized.
// Lower scores are more likely. epsilon == 0 gives the uniform distribution.
std::vector<double> exponential_probabilities(std::span<const double> scores,
                                              double sensitivity, double epsilon);

// Draws an index from exponential_probabilities. Scores must be non-empty and
// sensitivity positive; epsilon may be 0.
std::size_t exponential_choose(std::span<const double> scores, double sensitivity,
                               Budget budget, RngStream& rng,
                               const LedgerScope* scope = nullptr,
                               std::string_view mechanism = "exponential");

}  // namespace dpsynth

#endif  // DPSYNTH_MECHANISMS_H_
