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


// Seeded experiment harness: JSON configs, trials, sweeps and CSV output.

#ifndef DPSBM_HARNESS_H_
#define DPSBM_HARNESS_H_

#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

#include "dpsbm/certificates.h"
#include "dpsbm/concentration.h"
#include "dpsbm/privacy.h"
#include "dpsbm/sbm.h"
#include "dpsbm/sdp.h"

namespace dpsbm {

enum class Mode { kNonprivate, kStbl, kFast };
std::string_view ModeName(Mode m);
Mode ParseMode(std::string_view name);

// One grid point.
struct Cell {
  SbmParams params;
  double eps = 1.0;
  double delta_exp = 2.0;  // delta = n^-delta_exp.
  Mode mode = Mode::kNonprivate;
};

struct TrialOptions {
  SolverOptions solver;
  bool known_params = true;
  EstimatorMode estimator = EstimatorMode::kConditionalMean;
  bool permute = false;      // Shuffle vertices before recovery.
  bool diagnostics = true;   // Evaluate concentration and certificates.
  double margin = 0.1;
  SearchBudget budget;
};

struct TrialResult {
  Cell cell;
  std::uint64_t seed = 0;
  bool recovered = false;
  bool bottom = false;
  bool conc_pass = false;
  bool cert_valid = false;
  double ms = 0.0;
  std::string error;  // Empty on success.
  std::string note;
};

struct ExperimentConfig {
  Variant variant = Variant::kBasbm;
  Mode mode = Mode::kNonprivate;
  std::vector<int> n;
  std::vector<double> a;
  std::vector<double> b;
  std::vector<double> rho;
  std::vector<double> xi;
  std::vector<std::vector<double>> rhos;
  std::vector<double> eps;
  std::vector<double> delta_exp;
  int trials = 1;
  std::uint64_t seed = 1;
  int threads = 0;  // 0: hardware concurrency.
  std::string output;
  TrialOptions options;
};

// Throws ConfigError with the offending key.
ExperimentConfig ParseConfig(const nlohmann::json& j);
ExperimentConfig LoadConfig(const std::string& path);

// Cartesian product in the order n, a, b, rho, xi, rhos, eps, delta_exp.
std::vector<Cell> ExpandGrid(const ExperimentConfig& config);

// Deterministic per (cell, seed) apart from wall time. Module errors are
// recorded in the result rather than thrown.
TrialResult RunTrial(const Cell& cell, std::uint64_t seed,
                     const TrialOptions& options);

// Trial t of cell c uses seed HashSeed(config.seed, c, t). Results are in
// cell-major, trial-minor order regardless of thread count.
std::vector<TrialResult> RunSweep(const ExperimentConfig& config);

struct CellSummary {
  Cell cell;
  int trials = 0;
  double recovery_rate = 0.0;
  double bottom_rate = 0.0;
  double conc_rate = 0.0;
  double cert_rate = 0.0;
  double mean_ms = 0.0;
};

std::vector<CellSummary> Summarize(const std::vector<TrialResult>& results,
                                   int trials_per_cell);

inline constexpr std::string_view kCsvHeader =
    "variant,n,a,b,rho,xi,eps,delta_exp,mode,seed,recovered,bottom,conc_pass,"
    "cert_valid,ms";

// Header, one row per trial, then one "aggregate" row per cell whose flag
// columns hold rates and whose ms column holds the mean.
void WriteCsv(std::ostream& os, const std::vector<TrialResult>& results,
              int trials_per_cell);

nlohmann::json ToJson(const ConcentrationReport& r);
nlohmann::json ToJson(const ConcentrationConstants& c);
nlohmann::json ToJson(const BinaryVerification& v);
nlohmann::json ToJson(const GeneralVerification& v);
nlohmann::json ToJson(const MechanismOutcome& o);
nlohmann::json ToJson(const SbmParams& p);
SbmParams ParamsFromJson(const nlohmann::json& j);

}  // namespace dpsbm

#endif  // DPSBM_HARNESS_H_
