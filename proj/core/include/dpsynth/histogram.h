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
#ifndef DPSYNTH_HISTOGRAM_H_
#define DPSYNTH_HISTOGRAM_H_

#include <cstddef>
#include <span>
#include <vector>

#include "dpsynth/schema.h"
#include "dpsynth/table.h"

namespace dpsynth {

inline constexpr std::size_t kMaxBins = 256;

// Bounded DP: changing one record's value moves one unit between two bins.
inline constexpr double kHistogramSensitivity = 2.0;

// Binning rule:
//   categorical                     one bin per domain value
//   integer, <= 256 distinct values one bin per value
//   integer, wider                  256 equal bins over [lo, hi + 1)
//   real                            256 equal bins over [lo, hi] (last closed)
struct BinLayout {
  AttributeKind kind = AttributeKind::kCategorical;
  std::size_t count = 0;
  double lo = 0.0;
  double width = 1.0;
  bool per_value = true;

  std::size_t bin_of(double value) const;
  // Half-open value range [lower, upper) covered by bin i; for per-value
  // bins lower is the value itself.
  double lower(std::size_t i) const;
  double upper(std::size_t i) const;
};

BinLayout bin_layout(const AttributeSpec& spec);

struct Histogram {
  AttributeSpec attribute;
  std::vector<double> counts;

  double total() const;
  BinLayout layout() const { return bin_layout(attribute); }

  friend bool operator==(const Histogram&, const Histogram&) = default;
};

// Histogram of a single-attribute table. Throws std::invalid_argument for
// any other column count.
Histogram build_histogram(const ColumnTable& t);
Histogram build_histogram(const AttributeSpec& spec, std::span<const double> column);

// Post-processing: negative noisy counts become 0.
void clamp_nonnegative(std::vector<double>& counts);

}  // namespace dpsynth

#endif  // DPSYNTH_HISTOGRAM_H_
