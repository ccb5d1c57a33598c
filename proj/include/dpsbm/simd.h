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

// Data-parallel kernels with a scalar reference implementation and an AVX2
// variant chosen at runtime.

#ifndef DPSBM_SIMD_H_
#define DPSBM_SIMD_H_

#include <cstddef>
#include <cstdint>
#include <string_view>

namespace dpsbm::simd {

enum class Isa { kScalar, kAvx2 };

struct KernelTable {
  double (*dot)(const double* x, const double* y, std::size_t n);
  double (*sum)(const double* x, std::size_t n);
  // Returns sum_i (x_i - y_i)^2.
  double (*squared_distance)(const double* x, const double* y, std::size_t n);
  // y += alpha * x.
  void (*axpy)(double alpha, const double* x, double* y, std::size_t n);
  // out = x - y + alpha * z.
  void (*sub_axpy)(double* out, const double* x, const double* y,
                   const double* z, double alpha, std::size_t n);
  // out = x + y.
  void (*add)(double* out, const double* x, const double* y, std::size_t n);
  // u += x - z.
  void (*accumulate_difference)(double* u, const double* x, const double* z,
                                std::size_t n);
  // x += s.
  void (*add_scalar)(double* x, double s, std::size_t n);
  // out = min(max(in - shift, lo), hi).
  void (*clamp_shift)(double* out, const double* in, double shift, double lo,
                      double hi, std::size_t n);
  // Number of positions where a and b differ.
  std::size_t (*count_mismatch)(const std::int8_t* a, const std::int8_t* b,
                                std::size_t n);
  std::int64_t (*sum_i8)(const std::int8_t* a, std::size_t n);
};

const KernelTable& ScalarKernels();
// Only meaningful when IsaAvailable(Isa::kAvx2).
const KernelTable& Avx2Kernels();

bool IsaAvailable(Isa isa);
std::string_view IsaName(Isa isa);

// Kernels in effect for the process: the best available ISA unless
// overridden with ForceIsa.
const KernelTable& Active();
Isa ActiveIsa();
// Selects a specific ISA; returns false (and changes nothing) when the host
// lacks it.
bool ForceIsa(Isa isa);

}  // namespace dpsbm::simd

#endif  // DPSBM_SIMD_H_
