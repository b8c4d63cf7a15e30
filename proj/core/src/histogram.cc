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
#include "dpsynth/histogram.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace dpsynth {

BinLayout bin_layout(const AttributeSpec& spec) {
  BinLayout b;
  b.kind = spec.kind;
  switch (spec.kind) {
    case AttributeKind::kCategorical:
      b.count = spec.categories.size();
      break;
    case AttributeKind::kInteger: {
      const double distinct = spec.hi - spec.lo + 1.0;
      b.lo = spec.lo;
      if (distinct <= static_cast<double>(kMaxBins)) {
        b.count = static_cast<std::size_t>(distinct);
      } else {
        b.count = kMaxBins;
        b.per_value = false;
        b.width = distinct / static_cast<double>(kMaxBins);
      }
      break;
    }
    case AttributeKind::kReal:
      b.lo = spec.lo;
      b.per_value = false;
      if (spec.hi > spec.lo) {
        b.count = kMaxBins;
        b.width = (spec.hi - spec.lo) / static_cast<double>(kMaxBins);
      } else {
        b.count = 1;
        b.width = 0.0;
      }
      break;
  }
  return b;
}

std::size_t BinLayout::bin_of(double value) const {
  if (per_value) {
    const double idx = value - lo;
    if (idx < 0 || idx >= static_cast<double>(count)) {
      throw std::out_of_range("value outside histogram domain");
    }
    return static_cast<std::size_t>(idx);
  }
  if (width <= 0.0) return 0;
  const double idx = std::floor((value - lo) / width);
  if (idx < 0) throw std::out_of_range("value outside histogram domain");
  return std::min(count - 1, static_cast<std::size_t>(idx));
}

double BinLayout::lower(std::size_t i) const {
  return lo + static_cast<double>(i) * (per_value ? 1.0 : width);
}

double BinLayout::upper(std::size_t i) const {
  return lo + static_cast<double>(i + 1) * (per_value ? 1.0 : width);
}

double Histogram::total() const { return std::accumulate(counts.begin(), counts.end(), 0.0); }

Histogram build_histogram(const AttributeSpec& spec, std::span<const double> column) {
  const BinLayout layout = bin_layout(spec);
  Histogram h{spec, std::vector<double>(layout.count, 0.0)};
  for (double v : column) h.counts[layout.bin_of(v)] += 1.0;
  return h;
}

Histogram build_histogram(const ColumnTable& t) {
  if (t.column_count() != 1) {
    throw std::invalid_argument("build_histogram expects a single-attribute table, got " +
                                std::to_string(t.column_count()) + " attributes");
  }
  return build_histogram(t.schema().attributes[0], t.column(0));
}

void clamp_nonnegative(std::vector<double>& counts) {
  for (double& c : counts) c = std::max(c, 0.0);
}

}  // namespace dpsynth
