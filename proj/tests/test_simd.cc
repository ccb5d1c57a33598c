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


#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

#include "doctest.h"
#include "dpsbm/simd.h"

namespace dpsbm::simd {
namespace {

// Lengths that exercise empty input, partial vectors and unrolled tails.
const std::size_t kLengths[] = {0, 1, 3, 4, 5, 7, 8, 15, 16, 17, 31, 33, 64,
                                100, 257, 1000};

std::vector<double> RandomDoubles(std::mt19937_64& gen, std::size_t n) {
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  std::vector<double> v(n);
  for (double& x : v) x = u(gen);
  return v;
}

std::vector<std::int8_t> RandomBytes(std::mt19937_64& gen, std::size_t n,
                                     int lo, int hi) {
  std::uniform_int_distribution<int> u(lo, hi);
  std::vector<std::int8_t> v(n);
  for (auto& x : v) x = static_cast<std::int8_t>(u(gen));
  return v;
}

// Reductions may reassociate; elementwise kernels must match exactly.
void CompareTables(const KernelTable& ref, const KernelTable& alt) {
  std::mt19937_64 gen(5);
  for (std::size_t n : kLengths) {
    CAPTURE(n);
    const auto x = RandomDoubles(gen, n);
    const auto y = RandomDoubles(gen, n);
    const auto z = RandomDoubles(gen, n);
    const double scale = static_cast<double>(n) * 4.0 + 1.0;
    CHECK(std::abs(ref.dot(x.data(), y.data(), n) -
                   alt.dot(x.data(), y.data(), n)) <= 1e-13 * scale);
    CHECK(std::abs(ref.sum(x.data(), n) - alt.sum(x.data(), n)) <=
          1e-13 * scale);
    CHECK(std::abs(ref.squared_distance(x.data(), y.data(), n) -
                   alt.squared_distance(x.data(), y.data(), n)) <=
          1e-13 * scale * 4.0);

    std::vector<double> r1(y), r2(y);
    ref.axpy(0.37, x.data(), r1.data(), n);
    alt.axpy(0.37, x.data(), r2.data(), n);
    CHECK(r1 == r2);

    std::vector<double> o1(n), o2(n);
    ref.sub_axpy(o1.data(), x.data(), y.data(), z.data(), -1.5, n);
    alt.sub_axpy(o2.data(), x.data(), y.data(), z.data(), -1.5, n);
    CHECK(o1 == o2);

    ref.add(o1.data(), x.data(), y.data(), n);
    alt.add(o2.data(), x.data(), y.data(), n);
    CHECK(o1 == o2);

    r1 = z;
    r2 = z;
    ref.accumulate_difference(r1.data(), x.data(), y.data(), n);
    alt.accumulate_difference(r2.data(), x.data(), y.data(), n);
    CHECK(r1 == r2);

    r1 = x;
    r2 = x;
    ref.add_scalar(r1.data(), 0.25, n);
    alt.add_scalar(r2.data(), 0.25, n);
    CHECK(r1 == r2);

    ref.clamp_shift(o1.data(), x.data(), 0.1, 0.0, 1.0, n);
    alt.clamp_shift(o2.data(), x.data(), 0.1, 0.0, 1.0, n);
    CHECK(o1 == o2);

    const auto a = RandomBytes(gen, n, -1, 1);
    auto b = a;
    for (std::size_t i = 0; i < n; i += 3) b[i] = static_cast<std::int8_t>(-b[i]);
    CHECK(ref.count_mismatch(a.data(), b.data(), n) ==
          alt.count_mismatch(a.data(), b.data(), n));
    const auto big = RandomBytes(gen, n, -128, 127);
    CHECK(ref.sum_i8(big.data(), n) == alt.sum_i8(big.data(), n));
  }
}

TEST_SUITE("simd") {

TEST_CASE("scalar kernels match direct loops") {
  const KernelTable& k = ScalarKernels();
  const std::vector<double> x = {1, 2, 3, 4, 5};
  const std::vector<double> y = {5, 4, 3, 2, 1};
  CHECK(k.dot(x.data(), y.data(), 5) == 35.0);
  CHECK(k.sum(x.data(), 5) == 15.0);
  CHECK(k.squared_distance(x.data(), y.data(), 5) == 40.0);
  std::vector<double> out(5);
  k.clamp_shift(out.data(), x.data(), 2.0, 0.0, 2.5, 5);
  CHECK(out == std::vector<double>{0, 0, 1, 2, 2.5});
  const std::vector<std::int8_t> a = {1, -1, 0, 1};
  const std::vector<std::int8_t> b = {1, 1, 0, -1};
  CHECK(k.count_mismatch(a.data(), b.data(), 4) == 2);
  CHECK(k.sum_i8(a.data(), 4) == 1);
}

TEST_CASE("avx2 kernels agree with the scalar reference") {
  if (!IsaAvailable(Isa::kAvx2)) {
    MESSAGE("AVX2 not available on this host; equivalence not exercised");
    return;
  }
  CompareTables(ScalarKernels(), Avx2Kernels());
}

TEST_CASE("dispatch can be forced and restored") {
  const Isa original = ActiveIsa();
  CHECK(ForceIsa(Isa::kScalar));
  CHECK(ActiveIsa() == Isa::kScalar);
  CHECK(&Active() == &ScalarKernels());
  if (IsaAvailable(Isa::kAvx2)) {
    CHECK(ForceIsa(Isa::kAvx2));
    CHECK(ActiveIsa() == Isa::kAvx2);
  } else {
    CHECK_FALSE(ForceIsa(Isa::kAvx2));
  }
  ForceIsa(original);
  CHECK(IsaName(Isa::kScalar) == "scalar");
}

}  // TEST_SUITE

}  // namespace
}  // namespace dpsbm::simd
