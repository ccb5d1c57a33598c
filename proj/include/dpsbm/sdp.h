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

// SDP relaxations of the three models, an ADMM solver, rounding, and an
// exhaustive maximum-likelihood oracle for small graphs.
//
//   BASBM: max <A,Y>  s.t. Y psd, Y_ii = 1, <J,Y> = (n - 2K)^2
//   CBSBM: max <A,Y>  s.t. Y psd, Y_ii = 1
//   GSSBM: max <A,Z>  s.t. Z psd, Z >= 0, Z_ii <= 1,
//                          <I,Z> = sum_k K_k, <J,Z> = sum_k K_k^2

#ifndef DPSBM_SDP_H_
#define DPSBM_SDP_H_

#include <optional>
#include <string_view>
#include <vector>

#include "dpsbm/graph.h"
#include "dpsbm/linalg.h"
#include "dpsbm/sbm.h"

namespace dpsbm {

struct SdpProblem {
  Variant variant = Variant::kBasbm;
  SymMatrix a;
  int plus_count = 0;      // K, BASBM only.
  std::vector<int> sizes;  // K_1..K_r, GSSBM only.

  int n() const { return a.n(); }
};

SdpProblem MakeBasbmProblem(const Graph& g, int plus_count);
SdpProblem MakeCbsbmProblem(const Graph& g);
SdpProblem MakeGssbmProblem(const Graph& g, std::vector<int> sizes);
// Dispatches on params.variant; params.n must equal g.n().
SdpProblem MakeProblem(const Graph& g, const SbmParams& params);

// Largest violation of the affine and entrywise constraints (not PSD).
double ConstraintViolation(const SdpProblem& prob, const SymMatrix& y);

enum class SolveStatus { kConverged, kMaxIters };
std::string_view SolveStatusName(SolveStatus s);

struct SolverOptions {
  double tol = 1e-6;
  int max_iters = 10000;
  double step = 1.0;       // Initial penalty.
  bool adaptive_step = true;
  // Start from a spectral guess and the dual it induces. Does not change the
  // optimum, only the path to it.
  bool warm_start = true;
  // Iterations between attempts to jump to the dual induced by rounding the
  // current iterate; 0 disables.
  int polish_every = 50;
};

struct SdpSolution {
  SymMatrix y;
  double objective = 0.0;        // <A, Y>.
  double primal_residual = 0.0;  // ||X - Z||_F / max(1, ||Z||_F).
  double dual_residual = 0.0;    // rho ||Z - Z_prev||_F / max(1, ||rho U||_F).
  int iterations = 0;
  SolveStatus status = SolveStatus::kMaxIters;
  Variant variant = Variant::kBasbm;
};

// Throws InfeasibleProblem when the constraint set is empty.
SdpSolution Solve(const SdpProblem& prob, const SolverOptions& opts = {});

// Labels from the top eigenvector. With plus_count set, exactly that many
// coordinates with the largest entries get +1 (ties to the lower index) and
// the sign of the eigenvector is chosen to maximize sigma^T Y sigma;
// otherwise sigma_i = sign(v_i). When the classes are interchangeable the
// result is normalized to sigma_0 = +1. Throws DegenerateSpectrum.
std::vector<int> RoundBinary(const SymMatrix& y,
                             std::optional<int> plus_count);
std::vector<int> RoundBinary(const SdpSolution& sol,
                             std::optional<int> plus_count);

// Threshold at 1/2 and match connected components to sizes. Clusters are
// numbered in the order of `sizes`; equal sizes go by smallest vertex.
// Throws InconsistentRelation.
GroundTruth RoundGeneral(const SymMatrix& z, const std::vector<int>& sizes);
GroundTruth RoundGeneral(const SdpSolution& sol, const std::vector<int>& sizes);

// Rounds according to the problem variant and returns labels.
std::vector<int> RoundSolution(const SdpSolution& sol, const SdpProblem& prob);

// Exact maximizer of the combinatorial objective for n <= 16, ties broken
// towards the lexicographically smallest label vector (-1 < +1, 0 < 1 < ..).
// Throws TooLarge.
ClusterMatrix MleBruteforce(const Graph& g, const SbmParams& params);
std::vector<int> MleBruteforceLabels(const Graph& g, const SbmParams& params);

}  // namespace dpsbm

#endif  // DPSBM_SDP_H_
