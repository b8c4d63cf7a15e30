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

#ifndef DPSYNTH_ERROR_H_
#define DPSYNTH_ERROR_H_

#include <stdexcept>
#include <string>

namespace dpsynth {

// Invalid parameters or configuration (bad epsilon, gamma out of range, ...).
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Input data that does not satisfy the schema: parse failures, domain
// violations, broken referential integrity, malformed payloads.
class DataError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// The privacy ledger composed to more than the granted budget. Reaching this
// is an internal error.
class BudgetError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace dpsynth

#endif  // DPSYNTH_ERROR_H_
