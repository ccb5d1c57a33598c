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

#include <algorithm>

#include "dpsbm/simd.h"

namespace dpsbm::simd {
namespace {

double Dot(const double* x, const double* y, std::size_t n) {
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) s += x[i] * y[i];
  return s;
}

double Sum(const double* x, std::size_t n) {
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) s += x[i];
  return s;
}

double SquaredDistance(const double* x, const double* y, std::size_t n) {
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double d = x[i] - y[i];
    s += d * d;
  }
  return s;
}

void Axpy(double alpha, const double* x, double* y, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) y[i] += alpha * x[i];
}

void SubAxpy(double* out, const double* x, const double* y, const double* z,
             double alpha, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) out[i] = (x[i] - y[i]) + alpha * z[i];
}

void Add(double* out, const double* x, const double* y, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) out[i] = x[i] + y[i];
}

void AccumulateDifference(double* u, const double* x, const double* z,
                          std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) u[i] += x[i] - z[i];
}

void AddScalar(double* x, double s, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) x[i] += s;
}

void ClampShift(double* out, const double* in, double shift, double lo,
                double hi, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) {
    out[i] = std::min(std::max(in[i] - shift, lo), hi);
  }
}

std::size_t CountMismatch(const std::int8_t* a, const std::int8_t* b,
                          std::size_t n) {
  std::size_t c = 0;
  for (std::size_t i = 0; i < n; ++i) c += (a[i] != b[i]);
  return c;
}

std::int64_t SumI8(const std::int8_t* a, std::size_t n) {
  std::int64_t s = 0;
  for (std::size_t i = 0; i < n; ++i) s += a[i];
  return s;
}

}  // namespace

const KernelTable& ScalarKernels() {
  static const KernelTable kTable = {
      Dot,          Sum,       SquaredDistance, Axpy,
      SubAxpy,      Add,       AccumulateDifference,
      AddScalar,    ClampShift, CountMismatch,  SumI8,
  };
  return kTable;
}

}  // namespace dpsbm::simd
