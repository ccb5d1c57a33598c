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
#include <bit>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <numeric>
#include <string>

#include "dpsbm/error.h"
#include "dpsbm/sdp.h"
#include "dpsbm/tolerances.h"

namespace dpsbm {
namespace {

// Indices of the `count` largest entries of v; ties go to lower indices.
std::vector<int> TopIndices(const std::vector<double>& v, int count) {
  std::vector<int> idx(v.size());
  std::iota(idx.begin(), idx.end(), 0);
  std::stable_sort(idx.begin(), idx.end(),
                   [&](int x, int y) { return v[x] > v[y]; });
  idx.resize(count);
  return idx;
}

double QuadraticForm(const SymMatrix& y, const std::vector<int>& sigma) {
  std::vector<double> s(sigma.begin(), sigma.end());
  const std::vector<double> ys = y.Multiply(s);
  return std::inner_product(s.begin(), s.end(), ys.begin(), 0.0);
}

std::vector<int> LabelsFromTop(const std::vector<double>& v, int count) {
  std::vector<int> sigma(v.size(), -1);
  for (int i : TopIndices(v, count)) sigma[i] = 1;
  return sigma;
}

}  // namespace

std::vector<int> RoundBinary(const SymMatrix& y,
                             std::optional<int> plus_count) {
  const int n = y.n();
  if (n < 1) throw Error(ErrorKind::kInvalidParams, "empty matrix");
  if (plus_count && (*plus_count < 0 || *plus_count > n)) {
    throw Error(ErrorKind::kInvalidParams, "plus count outside [0, n]");
  }
  std::vector<double> v;
  if (n == 1) {
    v = {1.0};
  } else {
    const Eigenpairs top = LargestEigenpairs(y, 2);
    const double gap = top.values[1] - top.values[0];
    if (gap <= tol::kEigenGap * std::max(1.0, std::abs(top.values[1]))) {
      throw Error(ErrorKind::kDegenerateSpectrum,
                  "top eigenvalue is not simple");
    }
    v.assign(top.vectors.begin() + n, top.vectors.begin() + 2 * n);
  }
  // Fix the eigenvector sign: largest-magnitude entry (lowest index) positive.
  int pivot = 0;
  for (int i = 1; i < n; ++i) {
    if (std::abs(v[i]) > std::abs(v[pivot])) pivot = i;
  }
  if (v[pivot] < 0) {
    for (double& x : v) x = -x;
  }
  std::vector<int> sigma;
  bool interchangeable = true;
  if (plus_count) {
    sigma = LabelsFromTop(v, *plus_count);
    std::vector<double> neg(v);
    for (double& x : neg) x = -x;
    std::vector<int> alt = LabelsFromTop(neg, *plus_count);
    if (QuadraticForm(y, alt) > QuadraticForm(y, sigma)) sigma = std::move(alt);
    interchangeable = 2 * *plus_count == n;
  } else {
    sigma.resize(n);
    for (int i = 0; i < n; ++i) sigma[i] = v[i] >= 0 ? 1 : -1;
  }
  if (interchangeable && sigma[0] == -1) {
    for (int& s : sigma) s = -s;
  }
  return sigma;
}

std::vector<int> RoundBinary(const SdpSolution& sol,
                             std::optional<int> plus_count) {
  return RoundBinary(sol.y, plus_count);
}

GroundTruth RoundGeneral(const SymMatrix& z, const std::vector<int>& sizes) {
  const int n = z.n();
  const double h = tol::kClusterThreshold;
  std::vector<int> comp(n, -1);
  std::vector<std::vector<int>> members;
  for (int i = 0; i < n; ++i) {
    if (z(i, i) < h) {
      for (int j = 0; j < n; ++j) {
        if (j != i && z(i, j) > h) {
          throw Error(ErrorKind::kInconsistentRelation,
                      "outlier " + std::to_string(i) + " is related to " +
                          std::to_string(j));
        }
      }
      continue;
    }
    if (comp[i] >= 0) continue;
    // Breadth-first search over the thresholded relation.
    const int id = static_cast<int>(members.size());
    members.push_back({i});
    comp[i] = id;
    for (std::size_t head = 0; head < members[id].size(); ++head) {
      const int u = members[id][head];
      for (int j = 0; j < n; ++j) {
        if (j != u && comp[j] < 0 && z(u, j) > h && z(j, j) >= h) {
          comp[j] = id;
          members[id].push_back(j);
        }
      }
    }
    std::sort(members[id].begin(), members[id].end());
    for (int u : members[id]) {
      for (int w : members[id]) {
        if (u != w && !(z(u, w) > h)) {
          throw Error(ErrorKind::kInconsistentRelation,
                      "relation is not transitive at (" + std::to_string(u) +
                          ", " + std::to_string(w) + ")");
        }
      }
    }
  }
  if (members.size() != sizes.size()) {
    throw Error(ErrorKind::kInconsistentRelation,
                "found " + std::to_string(members.size()) + " clusters, expected " +
                    std::to_string(sizes.size()));
  }
  // Components are already ordered by smallest vertex; match each size to the
  // first unused component of that size.
  GroundTruth gt;
  gt.variant = Variant::kGssbm;
  gt.sizes = sizes;
  gt.labels.assign(n, 0);
  std::vector<bool> used(members.size(), false);
  for (std::size_t k = 0; k < sizes.size(); ++k) {
    bool matched = false;
    for (std::size_t c = 0; c < members.size(); ++c) {
      if (!used[c] && static_cast<int>(members[c].size()) == sizes[k]) {
        used[c] = true;
        for (int u : members[c]) gt.labels[u] = static_cast<int>(k) + 1;
        matched = true;
        break;
      }
    }
    if (!matched) {
      throw Error(ErrorKind::kInconsistentRelation,
                  "no component of size " + std::to_string(sizes[k]));
    }
  }
  return gt;
}

GroundTruth RoundGeneral(const SdpSolution& sol, const std::vector<int>& sizes) {
  return RoundGeneral(sol.y, sizes);
}

std::vector<int> RoundSolution(const SdpSolution& sol, const SdpProblem& prob) {
  switch (prob.variant) {
    case Variant::kBasbm: return RoundBinary(sol, prob.plus_count);
    case Variant::kCbsbm: return RoundBinary(sol, std::nullopt);
    case Variant::kGssbm: return RoundGeneral(sol, prob.sizes).labels;
  }
  throw Error(ErrorKind::kInvalidParams, "unknown variant");
}

std::vector<int> MleBruteforceLabels(const Graph& g, const SbmParams& params) {
  constexpr int kMaxN = 16;
  const int n = g.n();
  if (n > kMaxN) {
    throw Error(ErrorKind::kTooLarge,
                "exhaustive search limited to n <= " + std::to_string(kMaxN));
  }
  if (params.n != n) {
    throw Error(ErrorKind::kShapeMismatch, "params.n differs from graph size");
  }
  std::vector<int> adj(static_cast<std::size_t>(n) * n, 0);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) adj[static_cast<std::size_t>(i) * n + j] = g.at(i, j);
  }
  std::vector<int> best;
  long best_value = std::numeric_limits<long>::min();

  if (IsBinary(params.variant)) {
    const int plus = params.variant == Variant::kBasbm
                         ? ClusterSize(params.rho, n)
                         : -1;
    std::vector<int> sigma(n);
    // Vertex 0 is the most significant bit, so numeric order is
    // lexicographic order with -1 < +1.
    for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
      if (plus >= 0 && std::popcount(mask) != plus) continue;
      for (int i = 0; i < n; ++i) sigma[i] = (mask >> (n - 1 - i)) & 1u ? 1 : -1;
      long value = 0;
      for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
          value += adj[static_cast<std::size_t>(i) * n + j] * sigma[i] * sigma[j];
        }
      }
      if (value > best_value) {
        best_value = value;
        best = sigma;
      }
    }
    return best;
  }

  const std::vector<int> sizes = ClusterSizes(params);
  const int r = static_cast<int>(sizes.size());
  std::vector<int> remaining(r + 1);
  remaining[0] = n - std::accumulate(sizes.begin(), sizes.end(), 0);
  for (int k = 0; k < r; ++k) remaining[k + 1] = sizes[k];
  std::vector<int> labels(n, 0);
  // Depth-first in lexicographic order; value accumulates as labels are set.
  std::function<void(int, long)> visit = [&](int v, long value) {
    if (v == n) {
      if (value > best_value) {
        best_value = value;
        best = labels;
      }
      return;
    }
    for (int k = 0; k <= r; ++k) {
      if (remaining[k] == 0) continue;
      long gain = 0;
      if (k != 0) {
        for (int u = 0; u < v; ++u) {
          if (labels[u] == k) gain += adj[static_cast<std::size_t>(u) * n + v];
        }
      }
      --remaining[k];
      labels[v] = k;
      visit(v + 1, value + gain);
      ++remaining[k];
    }
    labels[v] = 0;
  };
  visit(0, 0);
  return best;
}

ClusterMatrix MleBruteforce(const Graph& g, const SbmParams& params) {
  return ClusterMatrixFromLabels(params.variant, MleBruteforceLabels(g, params));
}

}  // namespace dpsbm
