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

// Stochastic block models: binary asymmetric (BASBM), binary censored
// (CBSBM) and general structure with outliers (GSSBM).

#ifndef DPSBM_SBM_H_
#define DPSBM_SBM_H_

#include <cstdint>
#include <optional>
#include <string_view>
#include <utility>
#include <vector>

#include "dpsbm/graph.h"
#include "dpsbm/linalg.h"

namespace dpsbm {

enum class Variant { kBasbm, kCbsbm, kGssbm };

std::string_view VariantName(Variant v);
// Accepts "basbm", "cbsbm", "gssbm" (case-insensitive). Throws InvalidParams.
Variant ParseVariant(std::string_view name);
inline bool IsBinary(Variant v) { return v != Variant::kGssbm; }

struct SbmParams {
  Variant variant = Variant::kBasbm;
  int n = 0;
  double a = 0.0;  // p = a log n / n.
  double b = 0.0;  // q = b log n / n; unused by CBSBM.
  double rho = 0.5;   // First-cluster fraction (binary variants).
  double xi = 0.0;    // Label noise (CBSBM).
  std::vector<double> rhos;  // Cluster fractions, nonincreasing (GSSBM).

  double log_n() const;
  double p() const;
  double q() const;
  double rho_min() const;
};

// Throws InvalidParams describing the first violated invariant.
void ValidateParams(const SbmParams& params);

// floor(fraction * n), robust to representation error in the fraction.
int ClusterSize(double fraction, int n);

// Cluster sizes: {K, n - K} for binary variants, {K_1..K_r} for GSSBM.
std::vector<int> ClusterSizes(const SbmParams& params);

struct GroundTruth {
  Variant variant = Variant::kBasbm;
  // +1/-1 for binary variants; 1..r or 0 (outlier) for GSSBM.
  std::vector<int> labels;
  // {K, n - K} for binary variants; K_1..K_r for GSSBM.
  std::vector<int> sizes;

  int n() const { return static_cast<int>(labels.size()); }
  // Number of +1 labels (binary variants).
  int PlusCount() const;
  int num_clusters() const { return static_cast<int>(sizes.size()); }
};

// Vertices 0..K-1 form the first cluster (label +1 or 1), then the next
// clusters in order; GSSBM outliers come last.
GroundTruth MakeGroundTruth(const SbmParams& params);

struct GenerateHooks {
  // Replaces the within-cluster edge probability when set.
  std::optional<double> p_override;
};

// Deterministic in (params, seed). Each pair samples from its own counter
// stream; see rng.h.
std::pair<Graph, GroundTruth> Generate(const SbmParams& params,
                                       std::uint64_t seed,
                                       const GenerateHooks& hooks = {});

// Applies a seeded vertex permutation to both graph and ground truth.
std::pair<Graph, GroundTruth> PermuteVertices(const Graph& g,
                                              const GroundTruth& gt,
                                              std::uint64_t seed);

// Entrywise expectation of the adjacency matrix; zero diagonal.
SymMatrix ExpectedAdjacency(const SbmParams& params, const GroundTruth& gt);

// Dense n x n matrix with entries in {-1, 0, 1}.
struct ClusterMatrix {
  int n = 0;
  std::vector<std::int8_t> entries;

  int at(int i, int j) const {
    return entries[static_cast<std::size_t>(i) * n + j];
  }
  SymMatrix ToSym() const;
  bool operator==(const ClusterMatrix& o) const = default;
};

// sigma sigma^T for binary labels; sum_k xi_k xi_k^T for general labels.
ClusterMatrix ClusterMatrixFromLabels(Variant variant,
                                      const std::vector<int>& labels);
ClusterMatrix MakeClusterMatrix(const GroundTruth& gt);

// True iff the induced partitions and outlier sets coincide.
// Throws ShapeMismatch.
bool SameClustering(const ClusterMatrix& m1, const ClusterMatrix& m2);

}  // namespace dpsbm

#endif  // DPSBM_SBM_H_
