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

#include "dpsbm/sbm.h"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <numeric>
#include <string>

#include "dpsbm/error.h"
#include "dpsbm/rng.h"
#include "dpsbm/simd.h"

namespace dpsbm {
namespace {

constexpr std::uint32_t kEdgeStream = 0;
constexpr std::uint32_t kLabelStream = 1;

[[noreturn]] void Invalid(const std::string& what) {
  throw Error(ErrorKind::kInvalidParams, what);
}

}  // namespace

std::string_view VariantName(Variant v) {
  switch (v) {
    case Variant::kBasbm: return "basbm";
    case Variant::kCbsbm: return "cbsbm";
    case Variant::kGssbm: return "gssbm";
  }
  return "unknown";
}

Variant ParseVariant(std::string_view name) {
  std::string lower(name);
  std::transform(lower.begin(), lower.end(), lower.begin(),
                 [](unsigned char c) { return std::tolower(c); });
  if (lower == "basbm") return Variant::kBasbm;
  if (lower == "cbsbm") return Variant::kCbsbm;
  if (lower == "gssbm") return Variant::kGssbm;
  Invalid("unknown variant '" + std::string(name) + "'");
}

double SbmParams::log_n() const { return std::log(static_cast<double>(n)); }
double SbmParams::p() const { return a * log_n() / n; }
double SbmParams::q() const { return b * log_n() / n; }

double SbmParams::rho_min() const {
  if (variant != Variant::kGssbm) return rho;
  return rhos.empty() ? 0.0 : *std::min_element(rhos.begin(), rhos.end());
}

int ClusterSize(double fraction, int n) {
  return static_cast<int>(std::floor(fraction * n + 1e-9));
}

void ValidateParams(const SbmParams& params) {
  if (params.n < 2) Invalid("n must be at least 2");
  if (!std::isfinite(params.a) || !std::isfinite(params.b)) {
    Invalid("a and b must be finite");
  }
  if (params.variant == Variant::kCbsbm) {
    if (!(params.a > 0)) Invalid("a must be positive");
  } else if (!(params.a > params.b && params.b > 0)) {
    Invalid("require a > b > 0");
  }
  if (params.p() > 1.0) Invalid("a log n / n exceeds 1");
  if (params.variant == Variant::kGssbm) {
    if (params.rhos.empty()) Invalid("GSSBM needs at least one cluster");
    double total = 0.0;
    int sizes = 0;
    for (std::size_t k = 0; k < params.rhos.size(); ++k) {
      const double r = params.rhos[k];
      if (!(r > 0)) Invalid("cluster fractions must be positive");
      if (k > 0 && r > params.rhos[k - 1]) {
        Invalid("cluster fractions must be nonincreasing");
      }
      if (ClusterSize(r, params.n) < 1) Invalid("empty cluster");
      total += r;
      sizes += ClusterSize(r, params.n);
    }
    if (total > 1.0 + 1e-12) Invalid("cluster fractions sum above 1");
    if (sizes > params.n) Invalid("cluster sizes exceed n");
  } else {
    if (!(params.rho > 0 && params.rho <= 0.5)) Invalid("rho must lie in (0, 0.5]");
    if (ClusterSize(params.rho, params.n) < 1) Invalid("first cluster is empty");
  }
  if (params.variant == Variant::kCbsbm &&
      !(params.xi >= 0 && params.xi <= 0.5)) {
    Invalid("xi must lie in [0, 0.5]");
  }
}

std::vector<int> ClusterSizes(const SbmParams& params) {
  if (params.variant == Variant::kGssbm) {
    std::vector<int> sizes;
    for (double r : params.rhos) sizes.push_back(ClusterSize(r, params.n));
    return sizes;
  }
  const int k = ClusterSize(params.rho, params.n);
  return {k, params.n - k};
}

int GroundTruth::PlusCount() const {
  return static_cast<int>(std::count(labels.begin(), labels.end(), 1));
}

GroundTruth MakeGroundTruth(const SbmParams& params) {
  GroundTruth gt;
  gt.variant = params.variant;
  gt.sizes = ClusterSizes(params);
  gt.labels.assign(params.n, params.variant == Variant::kGssbm ? 0 : -1);
  int v = 0;
  if (params.variant == Variant::kGssbm) {
    for (std::size_t k = 0; k < gt.sizes.size(); ++k) {
      for (int t = 0; t < gt.sizes[k]; ++t) gt.labels[v++] = static_cast<int>(k) + 1;
    }
  } else {
    for (int t = 0; t < gt.sizes[0]; ++t) gt.labels[v++] = 1;
  }
  return gt;
}

std::pair<Graph, GroundTruth> Generate(const SbmParams& params,
                                       std::uint64_t seed,
                                       const GenerateHooks& hooks) {
  ValidateParams(params);
  GroundTruth gt = MakeGroundTruth(params);
  const double p = hooks.p_override.value_or(params.p());
  const double q = params.q();
  const int n = params.n;
  const Alphabet alphabet = params.variant == Variant::kCbsbm
                                ? Alphabet::kCensored
                                : Alphabet::kSimple;
  std::vector<std::int8_t> packed(static_cast<std::size_t>(n) * (n - 1) / 2);
  std::uint64_t t = 0;
  for (int i = 0; i < n; ++i) {
    const int li = gt.labels[i];
    for (int j = i + 1; j < n; ++j, ++t) {
      const int lj = gt.labels[j];
      const double u = CounterUniform(seed, kEdgeStream, t);
      switch (params.variant) {
        case Variant::kBasbm:
          packed[t] = u < (li == lj ? p : q);
          break;
        case Variant::kGssbm:
          packed[t] = u < (li == lj && li != 0 ? p : q);
          break;
        case Variant::kCbsbm:
          if (u < p) {
            const bool flip = CounterUniform(seed, kLabelStream, t) < params.xi;
            packed[t] = static_cast<std::int8_t>(flip ? -li * lj : li * lj);
          }
          break;
      }
    }
  }
  return {Graph::FromPacked(n, alphabet, std::move(packed)), std::move(gt)};
}

std::pair<Graph, GroundTruth> PermuteVertices(const Graph& g,
                                              const GroundTruth& gt,
                                              std::uint64_t seed) {
  const int n = g.n();
  if (gt.n() != n) throw Error(ErrorKind::kShapeMismatch, "gt size differs");
  std::vector<int> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  CounterRng rng(seed, 7);
  for (int i = n - 1; i > 0; --i) {
    const int j = static_cast<int>(rng() % static_cast<std::uint64_t>(i + 1));
    std::swap(perm[i], perm[j]);
  }
  GraphBuilder b(n, g.alphabet());
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      const int v = g.at(i, j);
      if (v != 0) b.Set(perm[i], perm[j], v);
    }
  }
  GroundTruth out = gt;
  for (int i = 0; i < n; ++i) out.labels[perm[i]] = gt.labels[i];
  return {std::move(b).Build(), std::move(out)};
}

SymMatrix ExpectedAdjacency(const SbmParams& params, const GroundTruth& gt) {
  ValidateParams(params);
  if (gt.n() != params.n || gt.variant != params.variant) {
    throw Error(ErrorKind::kInvalidParams, "ground truth does not match params");
  }
  const int n = params.n;
  const double p = params.p();
  const double q = params.q();
  SymMatrix m(n);
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      const int li = gt.labels[i];
      const int lj = gt.labels[j];
      double v = 0.0;
      switch (params.variant) {
        case Variant::kBasbm: v = li == lj ? p : q; break;
        case Variant::kGssbm: v = (li == lj && li != 0) ? p : q; break;
        case Variant::kCbsbm: v = (1.0 - 2.0 * params.xi) * p * li * lj; break;
      }
      m.Set(i, j, v);
    }
  }
  return m;
}

SymMatrix ClusterMatrix::ToSym() const {
  std::vector<double> d(entries.begin(), entries.end());
  return SymMatrix::FromDense(n, std::move(d));
}

ClusterMatrix ClusterMatrixFromLabels(Variant variant,
                                      const std::vector<int>& labels) {
  ClusterMatrix m;
  m.n = static_cast<int>(labels.size());
  m.entries.resize(static_cast<std::size_t>(m.n) * m.n);
  for (int i = 0; i < m.n; ++i) {
    for (int j = 0; j < m.n; ++j) {
      int v;
      if (IsBinary(variant)) {
        v = labels[i] * labels[j];
      } else {
        v = (labels[i] != 0 && labels[i] == labels[j]) ? 1 : 0;
      }
      m.entries[static_cast<std::size_t>(i) * m.n + j] = static_cast<std::int8_t>(v);
    }
  }
  return m;
}

ClusterMatrix MakeClusterMatrix(const GroundTruth& gt) {
  return ClusterMatrixFromLabels(gt.variant, gt.labels);
}

bool SameClustering(const ClusterMatrix& m1, const ClusterMatrix& m2) {
  if (m1.n != m2.n || m1.entries.size() != m2.entries.size()) {
    throw Error(ErrorKind::kShapeMismatch, "cluster matrices differ in size");
  }
  return simd::Active().count_mismatch(m1.entries.data(), m2.entries.data(),
                                       m1.entries.size()) == 0;
}

}  // namespace dpsbm
