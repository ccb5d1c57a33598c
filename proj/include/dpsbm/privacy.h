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


// Laplace noise, distance to instability, the Stability and Fast Stability
// mechanisms, and degree-based parameter estimation.

#ifndef DPSBM_PRIVACY_H_
#define DPSBM_PRIVACY_H_

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>

#include "dpsbm/concentration.h"
#include "dpsbm/graph.h"
#include "dpsbm/rng.h"
#include "dpsbm/sbm.h"
#include "dpsbm/sdp.h"

namespace dpsbm {

struct PrivacyParams {
  double eps = 1.0;
  double delta = 0.01;
  double c_delta = 2.0;  // Exponent c with delta = n^-c.

  // delta = n^-c_delta.
  static PrivacyParams FromExponent(double eps, double c_delta, int n);
  // log(1/delta) / eps.
  double Threshold() const;
};

void ValidatePrivacy(const PrivacyParams& priv);

// Inverse CDF of Laplace(0, scale) at u in (0, 1).
double LaplaceQuantile(double u, double scale);
// One draw by inversion of a single uniform in (0, 1).
double SampleLaplace(double scale, CounterRng& rng);

// A clustering procedure; nullopt marks a failed run (solver or rounding
// error), which counts as an output distinct from every clustering.
using ClusterFunction =
    std::function<std::optional<ClusterMatrix>(const Graph&)>;

// The SDP estimator: build the problem, solve, round.
ClusterFunction SdpClustering(const SbmParams& params,
                              const SolverOptions& opts = {});

// Caches a clustering function by graph contents.
ClusterFunction Memoize(ClusterFunction f);

struct SearchBudget {
  std::int64_t max_evaluations = 0;  // 0: unlimited.
  double max_seconds = 0.0;          // 0: unlimited.
};

// Least k <= cap such that a graph at distance k has a different output
// under SameClustering, where a failed output differs from every clustering;
// 0 when f(g) itself fails; cap when no change occurs within the cap.
// Throws BudgetExceeded.
int DistanceToInstability(const Graph& g, const ClusterFunction& f, int cap,
                          const SearchBudget& budget = {});

struct MechanismTrace {
  double d_hat = 0.0;
  double noise = 0.0;
  double threshold = 0.0;
  bool concentration_pass = false;
  std::optional<SolveStatus> solver_status;
  std::optional<double> a_used;
  std::optional<double> b_used;
  std::string note;  // Why the concentration test was skipped, if it was.
};

struct MechanismOutcome {
  std::optional<ClusterMatrix> result;  // nullopt is the bottom output.
  MechanismTrace trace;

  bool bottom() const { return !result.has_value(); }
};

// Test hook: replaces the Laplace draw.
struct MechanismHooks {
  std::optional<double> forced_noise;
};

// Search cap used by the Stability mechanism: ceil(T) + ceil(20 / eps).
int StabilityCap(const PrivacyParams& priv);

MechanismOutcome Stbl(const Graph& g, const ClusterFunction& f,
                      const PrivacyParams& priv, CounterRng& rng,
                      const MechanismHooks& hooks = {},
                      const SearchBudget& budget = {});

enum class EstimatorMode { kConditionalMean, kLiteral };
std::string_view EstimatorModeName(EstimatorMode m);
EstimatorMode ParseEstimatorMode(std::string_view name);

struct ParamEstimate {
  double a = 0.0;
  double b = 0.0;
  double rho = 0.0;
};

// Degree-split estimate of (a, b, rho) for a simple graph. kConditionalMean
// averages each side of the split over its own members; kLiteral scales both
// sums by 1/n. Throws DegenerateEstimate.
ParamEstimate EstimateParams(const Graph& g,
                             EstimatorMode mode = EstimatorMode::kConditionalMean);

struct FastConfig {
  // Model description. a and b are used only when known_params is set; the
  // remaining fields (variant, n, rho, xi, rhos) are always taken as given.
  SbmParams params;
  bool known_params = true;
  EstimatorMode estimator = EstimatorMode::kConditionalMean;
  double alpha = 0.001;   // Tightening factor for estimated parameters.
  double margin = 0.1;    // Safety margin of the default constants.
  SolverOptions solver;
  SearchBudget budget;
  // Optional shared cache for the clustering function across calls.
  std::shared_ptr<ClusterFunction> clustering;
};

// Fast Stability mechanism on the SDP estimator.
MechanismOutcome StblFast(const Graph& g, const FastConfig& config,
                          const PrivacyParams& priv, CounterRng& rng,
                          const MechanismHooks& hooks = {});

}  // namespace dpsbm

#endif  // DPSBM_PRIVACY_H_
