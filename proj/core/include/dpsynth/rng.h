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
#ifndef DPSYNTH_RNG_H_
#define DPSYNTH_RNG_H_

#include <cstddef>
#include <cstdint>
#include <limits>
#include <string>
#include <string_view>

namespace dpsynth {

// Counter-based random stream keyed by (seed, path). The i-th draw is a pure
// function of the key and i, so two streams with the same seed and path
// produce identical sequences and differently named children are independent.
//
// Paths are '/'-separated: RngStream(7, "a/b") == RngStream(7).derive("a").derive("b").
class RngStream {
 public:
  using result_type = std::uint64_t;

  explicit RngStream(std::uint64_t seed, std::string_view path = {});

  RngStream derive(std::string_view child) const;

  std::uint64_t seed() const { return seed_; }
  const std::string& path() const { return path_; }
  std::uint64_t draws() const { return counter_; }

  std::uint64_t next_u64();
  // Uniform in [0, 1) with 53 random bits.
  double uniform();
  // Uniform in the open interval (0, 1).
  double uniform_open();
  // Uniform integer in [0, n). n must be positive.
  std::size_t uniform_index(std::size_t n);

  // UniformRandomBitGenerator, so std::shuffle and friends accept it.
  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }
  result_type operator()() { return next_u64(); }

 private:
  RngStream(std::uint64_t seed, std::uint64_t key, std::string path);

  std::uint64_t seed_;
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
  std::string path_;
};

// Fisher-Yates shuffle driven by RngStream (std::shuffle's algorithm is
// implementation-defined, which would break cross-platform reproducibility).
template <typename It>
void shuffle(It first, It last, RngStream& rng) {
  const auto n = static_cast<std::size_t>(last - first);
  for (std::size_t i = n; i > 1; --i) {
    std::size_t j = rng.uniform_index(i);
    std::swap(first[i - 1], first[j]);
  }
}

// 64-bit FNV-1a, used for path hashing and digests.
std::uint64_t fnv1a64(std::string_view data);

}  // namespace dpsynth

#endif  // DPSYNTH_RNG_H_
