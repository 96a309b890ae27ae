// Copyright 2026 The privest Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef PRIVEST_RNG_H_
#define PRIVEST_RNG_H_

#include <cstdint>
#include <limits>

namespace privest {

// SplitMix64 (Steele, Lea and Flood): a counter-based generator whose k-th
// output is Mix(seed + k * 0x9E3779B97F4A7C15) with the 64-bit finalizer
//   z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9
//   z = (z ^ (z >> 27)) * 0x94D049BB133111EB
//   z =  z ^ (z >> 31).
// It is fully specified by these constants, so streams are reproducible
// across platforms and languages. Satisfies UniformRandomBitGenerator.
class SplitMix64 {
 public:
  using result_type = std::uint64_t;

  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() {
    return std::numeric_limits<result_type>::max();
  }

  result_type operator()() {
    state_ += kGolden;
    return Mix(state_);
  }

  static std::uint64_t Mix(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  // Independent stream for shard `index` of a run seeded with `seed`.
  static SplitMix64 Substream(std::uint64_t seed, std::uint64_t index) {
    return SplitMix64(Mix(seed ^ Mix(index + kGolden)));
  }

 private:
  static constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ULL;
  std::uint64_t state_;
};

// Uniform on [0, 1) from the top 53 bits of one draw.
double UniformDouble(SplitMix64& rng);

// Standard normal by the Box-Muller transform (cosine branch, two draws).
double StandardNormal(SplitMix64& rng);

}  // namespace privest

#endif  // PRIVEST_RNG_H_
