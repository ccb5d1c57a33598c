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

// Compiled without ISA flags so the CPU probe itself runs anywhere.

#include <atomic>

#include "dpsbm/simd.h"

namespace dpsbm::simd {
namespace {

bool HostHasAvx2() {
#if defined(DPSBM_HAVE_AVX2_TU) && (defined(__x86_64__) || defined(__i386__))
  __builtin_cpu_init();
  return __builtin_cpu_supports("avx2");
#else
  return false;
#endif
}

Isa BestIsa() { return HostHasAvx2() ? Isa::kAvx2 : Isa::kScalar; }

std::atomic<Isa>& Selected() {
  static std::atomic<Isa> isa{BestIsa()};
  return isa;
}

}  // namespace

bool IsaAvailable(Isa isa) {
  return isa == Isa::kScalar || HostHasAvx2();
}

std::string_view IsaName(Isa isa) {
  return isa == Isa::kAvx2 ? "avx2" : "scalar";
}

const KernelTable& Active() {
  return Selected().load(std::memory_order_relaxed) == Isa::kAvx2
             ? Avx2Kernels()
             : ScalarKernels();
}

Isa ActiveIsa() { return Selected().load(std::memory_order_relaxed); }

bool ForceIsa(Isa isa) {
  if (!IsaAvailable(isa)) return false;
  Selected().store(isa, std::memory_order_relaxed);
  return true;
}

}  // namespace dpsbm::simd
