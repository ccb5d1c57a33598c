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


#include "dpsbm/privacy.h"

#include <chrono>
#include <cmath>
#include <limits>
#include <mutex>
#include <string>
#include <utility>

#include "dpsbm/error.h"

namespace dpsbm {

PrivacyParams PrivacyParams::FromExponent(double eps, double c_delta, int n) {
  if (n < 2) throw Error(ErrorKind::kInvalidParams, "need n >= 2");
  PrivacyParams p;
  p.eps = eps;
  p.c_delta = c_delta;
  p.delta = std::pow(static_cast<double>(n), -c_delta);
  ValidatePrivacy(p);
  return p;
}

double PrivacyParams::Threshold() const { return std::log(1.0 / delta) / eps; }

void ValidatePrivacy(const PrivacyParams& priv) {
  if (!(priv.eps > 0.0) || !std::isfinite(priv.eps)) {
    throw Error(ErrorKind::kInvalidParams, "eps must be positive");
  }
  if (!(priv.delta > 0.0 && priv.delta < 1.0)) {
    throw Error(ErrorKind::kInvalidParams, "delta must lie in (0, 1)");
  }
  if (!(priv.c_delta >= 0.0) || !std::isfinite(priv.c_delta)) {
    throw Error(ErrorKind::kInvalidParams, "c_delta must be nonnegative");
  }
}

double LaplaceQuantile(double u, double scale) {
  if (!(scale > 0.0) || !std::isfinite(scale)) {
    throw Error(ErrorKind::kInvalidParams, "scale must be positive");
  }
  if (!(u > 0.0 && u < 1.0)) {
    throw Error(ErrorKind::kInvalidParams, "u must lie in (0, 1)");
  }
  const double c = u - 0.5;
  const double sign = c < 0.0 ? -1.0 : (c > 0.0 ? 1.0 : 0.0);
  return -scale * sign * std::log1p(-2.0 * std::abs(c));
}

double SampleLaplace(double scale, CounterRng& rng) {
  // Midpoint of a 53-bit cell, so u is never 0 or 1.
  const double u =
      (static_cast<double>(rng() >> 11) + 0.5) * 0x1.0p-53;
  return LaplaceQuantile(u, scale);
}

ClusterFunction SdpClustering(const SbmParams& params,
                              const SolverOptions& opts) {
  return [params, opts](const Graph& g) -> std::optional<ClusterMatrix> {
    try {
      const SdpProblem prob = MakeProblem(g, params);
      const SdpSolution sol = Solve(prob, opts);
      return ClusterMatrixFromLabels(params.variant, RoundSolution(sol, prob));
    } catch (const Error&) {
      return std::nullopt;
    }
  };
}

ClusterFunction Memoize(ClusterFunction f) {
  struct Cache {
    std::mutex mu;
    std::unordered_map<std::string, std::optional<ClusterMatrix>> map;
  };
  auto cache = std::make_shared<Cache>();
  return [f = std::move(f), cache](const Graph& g) {
    std::string key(g.packed().begin(), g.packed().end());
    key.push_back(static_cast<char>(g.alphabet()));
    {
      std::lock_guard<std::mutex> lock(cache->mu);
      auto it = cache->map.find(key);
      if (it != cache->map.end()) return it->second;
    }
    std::optional<ClusterMatrix> out = f(g);
    std::lock_guard<std::mutex> lock(cache->mu);
    cache->map.emplace(std::move(key), out);
    return out;
  };
}

int DistanceToInstability(const Graph& g, const ClusterFunction& f, int cap,
                          const SearchBudget& budget) {
  if (cap < 0) throw Error(ErrorKind::kInvalidParams, "cap must be >= 0");
  if (cap == 0) return 0;
  const std::optional<ClusterMatrix> base = f(g);
  if (!base) return 0;
  const auto start = std::chrono::steady_clock::now();
  std::int64_t evaluations = 0;
  NeighborStream stream(g, cap);
  while (std::optional<Graph> h = stream.Next()) {
    if (budget.max_evaluations > 0 && evaluations >= budget.max_evaluations) {
      throw Error(ErrorKind::kBudgetExceeded,
                  "distance search exceeded " +
                      std::to_string(budget.max_evaluations) + " evaluations");
    }
    if (budget.max_seconds > 0.0) {
      const std::chrono::duration<double> elapsed =
          std::chrono::steady_clock::now() - start;
      if (elapsed.count() > budget.max_seconds) {
        throw Error(ErrorKind::kBudgetExceeded,
                    "distance search exceeded its time budget");
      }
    }
    ++evaluations;
    const std::optional<ClusterMatrix> out = f(*h);
    if (!out || !SameClustering(*out, *base)) return stream.current_distance();
  }
  return cap;
}

int StabilityCap(const PrivacyParams& priv) {
  ValidatePrivacy(priv);
  return static_cast<int>(std::ceil(priv.Threshold()) +
                          std::ceil(20.0 / priv.eps));
}

MechanismOutcome Stbl(const Graph& g, const ClusterFunction& f,
                      const PrivacyParams& priv, CounterRng& rng,
                      const MechanismHooks& hooks,
                      const SearchBudget& budget) {
  ValidatePrivacy(priv);
  MechanismOutcome out;
  out.trace.threshold = priv.Threshold();
  out.trace.d_hat = DistanceToInstability(g, f, StabilityCap(priv), budget);
  out.trace.noise =
      hooks.forced_noise ? *hooks.forced_noise : SampleLaplace(1.0 / priv.eps, rng);
  if (out.trace.d_hat + out.trace.noise > out.trace.threshold) {
    out.result = f(g);
  }
  return out;
}

std::string_view EstimatorModeName(EstimatorMode m) {
  return m == EstimatorMode::kLiteral ? "literal" : "conditional";
}

EstimatorMode ParseEstimatorMode(std::string_view name) {
  if (name == "literal") return EstimatorMode::kLiteral;
  if (name == "conditional") return EstimatorMode::kConditionalMean;
  throw Error(ErrorKind::kConfigError,
              "unknown estimator '" + std::string(name) + "'");
}

namespace {

GroundTruth TruthFromLabels(const SbmParams& params, std::vector<int> labels) {
  GroundTruth gt;
  gt.variant = params.variant;
  if (IsBinary(params.variant)) {
    int plus = 0;
    for (int s : labels) plus += s > 0;
    gt.sizes = {plus, static_cast<int>(labels.size()) - plus};
  } else {
    gt.sizes = ClusterSizes(params);
  }
  gt.labels = std::move(labels);
  return gt;
}

}  // namespace

MechanismOutcome StblFast(const Graph& g, const FastConfig& config,
                          const PrivacyParams& priv, CounterRng& rng,
                          const MechanismHooks& hooks) {
  ValidatePrivacy(priv);
  SbmParams params = config.params;
  if (params.n != g.n()) {
    throw Error(ErrorKind::kShapeMismatch, "params.n differs from graph size");
  }
  const double ln = params.log_n();
  const double cap_real = priv.c_delta * ln / priv.eps;

  MechanismOutcome out;
  out.trace.threshold = priv.Threshold();

  // Estimator output.
  std::optional<ClusterMatrix> y_hat;
  std::optional<GroundTruth> sigma_hat;
  try {
    const SdpProblem prob = MakeProblem(g, params);
    const SdpSolution sol = Solve(prob, config.solver);
    out.trace.solver_status = sol.status;
    sigma_hat = TruthFromLabels(params, RoundSolution(sol, prob));
    y_hat = ClusterMatrixFromLabels(params.variant, sigma_hat->labels);
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::kDegenerateSpectrum &&
        e.kind() != ErrorKind::kInconsistentRelation &&
        e.kind() != ErrorKind::kInfeasibleProblem) {
      throw;
    }
    out.trace.note = e.what();
  }

  // Parameters, constants and the concentration test.
  if (y_hat) {
    if (!config.known_params) {
      if (params.variant != Variant::kBasbm) {
        throw Error(ErrorKind::kInvalidParams,
                    "parameter estimation is defined for BASBM only");
      }
      const ParamEstimate est = EstimateParams(g, config.estimator);
      params.a = est.a;
      params.b = est.b;
    }
    out.trace.a_used = params.a;
    out.trace.b_used = params.b;
    try {
      const ConcentrationConstants cc = TightenConstants(
          DefaultConstants(params, priv.eps, priv.c_delta, config.margin),
          config.alpha);
      out.trace.concentration_pass =
          CheckConcentration(g, *sigma_hat, params, cc).pass;
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::kInfeasibleRegime &&
          e.kind() != ErrorKind::kInvalidShift &&
          e.kind() != ErrorKind::kInvalidParams) {
        throw;
      }
      out.trace.note = e.what();
    }
  }

  // Distance proxy.
  if (out.trace.concentration_pass) {
    out.trace.d_hat = cap_real;
  } else if (!y_hat) {
    out.trace.d_hat = 0.0;
  } else {
    const ClusterFunction f = config.clustering
                                  ? *config.clustering
                                  : SdpClustering(config.params, config.solver);
    const int cap = static_cast<int>(std::ceil(cap_real));
    const int d = DistanceToInstability(g, f, cap, config.budget);
    out.trace.d_hat = std::min(cap_real, static_cast<double>(d));
  }

  // Noisy release.
  out.trace.noise =
      hooks.forced_noise ? *hooks.forced_noise : SampleLaplace(1.0 / priv.eps, rng);
  if (out.trace.d_hat + out.trace.noise > out.trace.threshold) {
    out.result = std::move(y_hat);
  }
  return out;
}

}  // namespace dpsbm
