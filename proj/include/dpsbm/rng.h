// Copyright 2026 The DP-SBM Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Counter-based random numbers (Philox4x32-10).
//
// Every draw is a pure function of (key, counter). Graph generation keys the
// generator with the seed and uses the pair index as the counter, so each
// vertex pair owns an independent stream regardless of evaluation order:
//   counter = {pair_index_lo, pair_index_hi, stream, 0}
// where stream 0 decides edge presence and stream 1 decides label noise.

#ifndef DPSBM_RNG_H_
#define DPSBM_RNG_H_

#include <array>
#include <cstdint>
#include <limits>

namespace dpsbm {

using PhiloxCounter = std::array<std::uint32_t, 4>;
using PhiloxKey = std::array<std::uint32_t, 2>;

PhiloxCounter Philox4x32(PhiloxCounter ctr, PhiloxKey key);

std::uint64_t SplitMix64(std::uint64_t x);

// Combines values into one 64-bit seed (order-sensitive).
std::uint64_t HashSeed(std::uint64_t a, std::uint64_t b);
std::uint64_t HashSeed(std::uint64_t a, std::uint64_t b, std::uint64_t c);

// Maps 64 random bits to a double in [0, 1) with 53-bit resolution.
inline double UnitFromBits(std::uint64_t bits) {
  return static_cast<double>(bits >> 11) * 0x1.0p-53;
}

inline PhiloxKey KeyFromSeed(std::uint64_t seed) {
  return {static_cast<std::uint32_t>(seed),
          static_cast<std::uint32_t>(seed >> 32)};
}

// Uniform in [0, 1) for (seed, stream, index).
double CounterUniform(std::uint64_t seed, std::uint32_t stream,
                      std::uint64_t index);

// Sequential generator over one Philox stream. Satisfies
// std::uniform_random_bit_generator.
class CounterRng {
 public:
  using result_type = std::uint64_t;

  explicit CounterRng(std::uint64_t seed, std::uint32_t stream = 0)
      : key_(KeyFromSeed(seed)), stream_(stream) {}

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() {
    return std::numeric_limits<result_type>::max();
  }

  result_type operator()();
  double Uniform() { return UnitFromBits((*this)()); }

 private:
  PhiloxKey key_;
  std::uint32_t stream_;
  std::uint64_t counter_ = 0;
  PhiloxCounter block_{};
  int used_ = 2;  // 64-bit words consumed from block_.
};

}  // namespace dpsbm

#endif  // DPSBM_RNG_H_
