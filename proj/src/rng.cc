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

#include "dpsbm/rng.h"

namespace dpsbm {
namespace {

constexpr std::uint32_t kM0 = 0xD2511F53u;
constexpr std::uint32_t kM1 = 0xCD9E8D57u;
constexpr std::uint32_t kW0 = 0x9E3779B9u;
constexpr std::uint32_t kW1 = 0xBB67AE85u;

inline void MulHiLo(std::uint32_t a, std::uint32_t b, std::uint32_t* hi,
                    std::uint32_t* lo) {
  const std::uint64_t p = static_cast<std::uint64_t>(a) * b;
  *hi = static_cast<std::uint32_t>(p >> 32);
  *lo = static_cast<std::uint32_t>(p);
}

inline PhiloxCounter Round(const PhiloxCounter& c, const PhiloxKey& k) {
  std::uint32_t hi0, lo0, hi1, lo1;
  MulHiLo(kM0, c[0], &hi0, &lo0);
  MulHiLo(kM1, c[2], &hi1, &lo1);
  return {hi1 ^ c[1] ^ k[0], lo1, hi0 ^ c[3] ^ k[1], lo0};
}

}  // namespace

PhiloxCounter Philox4x32(PhiloxCounter ctr, PhiloxKey key) {
  for (int r = 0; r < 10; ++r) {
    if (r > 0) {
      key[0] += kW0;
      key[1] += kW1;
    }
    ctr = Round(ctr, key);
  }
  return ctr;
}

std::uint64_t SplitMix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ull;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

std::uint64_t HashSeed(std::uint64_t a, std::uint64_t b) {
  return SplitMix64(SplitMix64(a) ^ (b + 0x632BE59BD9B4E019ull));
}

std::uint64_t HashSeed(std::uint64_t a, std::uint64_t b, std::uint64_t c) {
  return HashSeed(HashSeed(a, b), c);
}

double CounterUniform(std::uint64_t seed, std::uint32_t stream,
                      std::uint64_t index) {
  const PhiloxCounter out = Philox4x32(
      {static_cast<std::uint32_t>(index),
       static_cast<std::uint32_t>(index >> 32), stream, 0},
      KeyFromSeed(seed));
  return UnitFromBits((static_cast<std::uint64_t>(out[0]) << 32) | out[1]);
}

CounterRng::result_type CounterRng::operator()() {
  if (used_ == 2) {
    block_ = Philox4x32({static_cast<std::uint32_t>(counter_),
                         static_cast<std::uint32_t>(counter_ >> 32), stream_,
                         1u},
                        key_);
    ++counter_;
    used_ = 0;
  }
  const int w = 2 * used_++;
  return (static_cast<std::uint64_t>(block_[w]) << 32) | block_[w + 1];
}

}  // namespace dpsbm
