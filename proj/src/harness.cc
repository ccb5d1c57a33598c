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


#include "dpsbm/harness.h"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>
#include <thread>
#include <utility>

#include "dpsbm/error.h"
#include "dpsbm/rng.h"

namespace dpsbm {
namespace {

using nlohmann::json;

[[noreturn]] void ConfigFail(const std::string& what) {
  throw Error(ErrorKind::kConfigError, what);
}

template <typename T>
std::vector<T> ListOf(const json& j, const char* key, std::vector<T> fallback) {
  if (!j.contains(key)) return fallback;
  const json& v = j.at(key);
  std::vector<T> out;
  try {
    if (v.is_array()) {
      for (const json& x : v) out.push_back(x.get<T>());
    } else {
      out.push_back(v.get<T>());
    }
  } catch (const json::exception& e) {
    ConfigFail(std::string("bad value for '") + key + "': " + e.what());
  }
  if (out.empty()) ConfigFail(std::string("'") + key + "' is empty");
  return out;
}

template <typename T>
T ValueOf(const json& j, const char* key, T fallback) {
  if (!j.contains(key)) return fallback;
  try {
    return j.at(key).get<T>();
  } catch (const json::exception& e) {
    ConfigFail(std::string("bad value for '") + key + "': " + e.what());
  }
}

std::string Num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.10g", v);
  return buf;
}

std::string RhoField(const SbmParams& p) {
  if (p.variant != Variant::kGssbm) return Num(p.rho);
  std::string s;
  for (std::size_t k = 0; k < p.rhos.size(); ++k) {
    if (k) s += ':';
    s += Num(p.rhos[k]);
  }
  return s;
}

std::string CellPrefix(const Cell& c) {
  const SbmParams& p = c.params;
  return std::string(VariantName(p.variant)) + ',' + std::to_string(p.n) + ',' +
         Num(p.a) + ',' + Num(p.b) + ',' + RhoField(p) + ',' + Num(p.xi) + ',' +
         Num(c.eps) + ',' + Num(c.delta_exp) + ',' + std::string(ModeName(c.mode));
}

json Finite(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

// Concentration and certificate diagnostics on the true clustering.
void Diagnose(const Graph& g, const GroundTruth& gt, const Cell& cell,
              const TrialOptions& opts, TrialResult& r) {
  try {
    const ConcentrationConstants cc =
        DefaultConstants(cell.params, cell.eps, cell.delta_exp, opts.margin);
    if (cell.mode == Mode::kNonprivate || cell.mode == Mode::kStbl) {
      r.conc_pass = CheckConcentration(g, gt, cell.params, cc).pass;
    }
    if (IsBinary(cell.params.variant)) {
      r.cert_valid = VerifyBinary(BuildBinary(g, gt, cell.params), gt).valid;
    } else {
      r.cert_valid =
          VerifyGeneral(BuildGeneral(g, gt, cell.params, cc), gt).valid;
    }
  } catch (const Error& e) {
    r.note = e.what();
    if (e.kind() != ErrorKind::kInfeasibleRegime) return;
    // Binary certificates do not depend on the constants.
    if (IsBinary(cell.params.variant)) {
      r.cert_valid = VerifyBinary(BuildBinary(g, gt, cell.params), gt).valid;
    }
  }
}

}  // namespace

std::string_view ModeName(Mode m) {
  switch (m) {
    case Mode::kNonprivate: return "nonprivate";
    case Mode::kStbl: return "stbl";
    case Mode::kFast: return "fast";
  }
  return "?";
}

Mode ParseMode(std::string_view name) {
  if (name == "nonprivate") return Mode::kNonprivate;
  if (name == "stbl") return Mode::kStbl;
  if (name == "fast") return Mode::kFast;
  throw Error(ErrorKind::kConfigError, "unknown mode '" + std::string(name) + "'");
}

ExperimentConfig ParseConfig(const json& j) {
  if (!j.is_object()) ConfigFail("config must be a JSON object");
  static const char* kKeys[] = {"variant", "mode",      "n",       "a",
                                "b",       "rho",       "xi",      "rhos",
                                "eps",     "delta_exp", "trials",  "seed",
                                "threads", "output",    "known_params",
                                "estimator", "permute", "diagnostics",
                                "margin",  "solver",    "budget"};
  for (const auto& [key, _] : j.items()) {
    if (std::find_if(std::begin(kKeys), std::end(kKeys), [&](const char* k) {
          return key == k;
        }) == std::end(kKeys)) {
      ConfigFail("unknown key '" + key + "'");
    }
  }
  ExperimentConfig c;
  try {
    c.variant = ParseVariant(ValueOf<std::string>(j, "variant", "basbm"));
  } catch (const Error& e) {
    ConfigFail(e.what());
  }
  c.mode = ParseMode(ValueOf<std::string>(j, "mode", "nonprivate"));
  if (!j.contains("n") || !j.contains("a")) ConfigFail("'n' and 'a' are required");
  c.n = ListOf<int>(j, "n", {});
  c.a = ListOf<double>(j, "a", {});
  c.b = ListOf<double>(j, "b", {c.variant == Variant::kCbsbm ? 0.0 : -1.0});
  if (c.variant != Variant::kCbsbm && !j.contains("b")) ConfigFail("'b' is required");
  c.rho = ListOf<double>(j, "rho", {0.5});
  c.xi = ListOf<double>(j, "xi", {0.0});
  if (c.variant == Variant::kGssbm) {
    if (!j.contains("rhos")) ConfigFail("'rhos' is required for gssbm");
    const json& r = j.at("rhos");
    if (!r.is_array() || r.empty()) ConfigFail("'rhos' must be a nonempty array");
    try {
      if (r.front().is_array()) {
        for (const json& v : r) c.rhos.push_back(v.get<std::vector<double>>());
      } else {
        c.rhos.push_back(r.get<std::vector<double>>());
      }
    } catch (const json::exception& e) {
      ConfigFail(std::string("bad value for 'rhos': ") + e.what());
    }
  } else {
    c.rhos = {{}};
  }
  c.eps = ListOf<double>(j, "eps", {1.0});
  c.delta_exp = ListOf<double>(j, "delta_exp", {2.0});
  c.trials = ValueOf<int>(j, "trials", 1);
  if (c.trials < 1) ConfigFail("'trials' must be at least 1");
  c.seed = ValueOf<std::uint64_t>(j, "seed", 1);
  c.threads = ValueOf<int>(j, "threads", 0);
  c.output = ValueOf<std::string>(j, "output", "");
  TrialOptions& o = c.options;
  o.known_params = ValueOf<bool>(j, "known_params", true);
  o.estimator = ParseEstimatorMode(ValueOf<std::string>(j, "estimator", "conditional"));
  o.permute = ValueOf<bool>(j, "permute", false);
  o.diagnostics = ValueOf<bool>(j, "diagnostics", true);
  o.margin = ValueOf<double>(j, "margin", 0.1);
  o.solver.max_iters = 500;
  if (j.contains("solver")) {
    const json& s = j.at("solver");
    if (!s.is_object()) ConfigFail("'solver' must be an object");
    o.solver.tol = ValueOf<double>(s, "tol", o.solver.tol);
    o.solver.max_iters = ValueOf<int>(s, "max_iters", o.solver.max_iters);
    o.solver.step = ValueOf<double>(s, "step", o.solver.step);
    o.solver.adaptive_step = ValueOf<bool>(s, "adaptive_step", o.solver.adaptive_step);
    o.solver.warm_start = ValueOf<bool>(s, "warm_start", o.solver.warm_start);
    o.solver.polish_every = ValueOf<int>(s, "polish_every", o.solver.polish_every);
  }
  o.budget.max_evaluations = 10000;
  if (j.contains("budget")) {
    const json& b = j.at("budget");
    if (!b.is_object()) ConfigFail("'budget' must be an object");
    o.budget.max_evaluations =
        ValueOf<std::int64_t>(b, "max_evaluations", o.budget.max_evaluations);
    o.budget.max_seconds = ValueOf<double>(b, "max_seconds", o.budget.max_seconds);
  }
  // Reject invalid cells up front.
  for (const Cell& cell : ExpandGrid(c)) {
    try {
      ValidateParams(cell.params);
      PrivacyParams::FromExponent(cell.eps, cell.delta_exp, cell.params.n);
    } catch (const Error& e) {
      ConfigFail(std::string("invalid cell: ") + e.what());
    }
  }
  return c;
}

ExperimentConfig LoadConfig(const std::string& path) {
  std::ifstream in(path);
  if (!in) ConfigFail("cannot open config '" + path + "'");
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    ConfigFail(std::string("malformed JSON: ") + e.what());
  }
  return ParseConfig(j);
}

std::vector<Cell> ExpandGrid(const ExperimentConfig& c) {
  std::vector<Cell> cells;
  for (int n : c.n)
    for (double a : c.a)
      for (double b : c.b)
        for (double rho : c.rho)
          for (double xi : c.xi)
            for (const auto& rhos : c.rhos)
              for (double eps : c.eps)
                for (double de : c.delta_exp) {
                  Cell cell;
                  cell.params.variant = c.variant;
                  cell.params.n = n;
                  cell.params.a = a;
                  cell.params.b = b;
                  cell.params.rho = rho;
                  cell.params.xi = xi;
                  cell.params.rhos = rhos;
                  cell.eps = eps;
                  cell.delta_exp = de;
                  cell.mode = c.mode;
                  cells.push_back(std::move(cell));
                }
  return cells;
}

TrialResult RunTrial(const Cell& cell, std::uint64_t seed,
                     const TrialOptions& opts) {
  TrialResult r;
  r.cell = cell;
  r.seed = seed;
  const auto start = std::chrono::steady_clock::now();
  try {
    auto [g, gt] = Generate(cell.params, seed);
    if (opts.permute) {
      std::tie(g, gt) = PermuteVertices(g, gt, HashSeed(seed, 0x7065726dULL));
    }
    const ClusterMatrix truth = MakeClusterMatrix(gt);
    if (cell.mode == Mode::kNonprivate) {
      const std::optional<ClusterMatrix> y =
          SdpClustering(cell.params, opts.solver)(g);
      r.recovered = y && SameClustering(*y, truth);
      if (!y) r.note = "estimator failed";
    } else {
      const PrivacyParams priv =
          PrivacyParams::FromExponent(cell.eps, cell.delta_exp, cell.params.n);
      CounterRng rng(seed, 2);
      MechanismOutcome out;
      if (cell.mode == Mode::kStbl) {
        out = Stbl(g, Memoize(SdpClustering(cell.params, opts.solver)), priv,
                   rng, {}, opts.budget);
      } else {
        FastConfig fc;
        fc.params = cell.params;
        fc.known_params = opts.known_params;
        fc.estimator = opts.estimator;
        fc.margin = opts.margin;
        fc.solver = opts.solver;
        fc.budget = opts.budget;
        try {
          out = StblFast(g, fc, priv, rng);
        } catch (const Error& e) {
          if (e.kind() != ErrorKind::kDegenerateEstimate) throw;
          // Fall back to the configured parameters.
          fc.known_params = true;
          CounterRng retry(seed, 2);
          out = StblFast(g, fc, priv, retry);
          r.note = std::string("known-parameter fallback: ") + e.what();
        }
        r.conc_pass = out.trace.concentration_pass;
      }
      r.bottom = out.bottom();
      r.recovered = !r.bottom && SameClustering(*out.result, truth);
    }
    if (opts.diagnostics) Diagnose(g, gt, cell, opts, r);
  } catch (const Error& e) {
    r.error = e.what();
    r.recovered = false;
  }
  const std::chrono::duration<double, std::milli> ms =
      std::chrono::steady_clock::now() - start;
  r.ms = ms.count();
  return r;
}

std::vector<TrialResult> RunSweep(const ExperimentConfig& config) {
  const std::vector<Cell> cells = ExpandGrid(config);
  const std::size_t total = cells.size() * config.trials;
  std::vector<TrialResult> results(total);
  int threads = config.threads > 0
                    ? config.threads
                    : static_cast<int>(std::thread::hardware_concurrency());
  threads = std::clamp(threads, 1, static_cast<int>(std::max<std::size_t>(total, 1)));
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t idx = next++; idx < total; idx = next++) {
      const std::size_t c = idx / config.trials;
      const std::size_t t = idx % config.trials;
      results[idx] = RunTrial(cells[c], HashSeed(config.seed, c, t), config.options);
    }
  };
  if (threads == 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    for (int i = 0; i < threads; ++i) pool.emplace_back(work);
    for (std::thread& th : pool) th.join();
  }
  return results;
}

std::vector<CellSummary> Summarize(const std::vector<TrialResult>& results,
                                   int trials_per_cell) {
  if (trials_per_cell < 1) {
    throw Error(ErrorKind::kInvalidParams, "trials per cell must be >= 1");
  }
  std::vector<CellSummary> out;
  for (std::size_t i = 0; i < results.size(); i += trials_per_cell) {
    CellSummary s;
    s.cell = results[i].cell;
    const std::size_t end = std::min(results.size(), i + trials_per_cell);
    for (std::size_t k = i; k < end; ++k) {
      const TrialResult& r = results[k];
      ++s.trials;
      s.recovery_rate += r.recovered;
      s.bottom_rate += r.bottom;
      s.conc_rate += r.conc_pass;
      s.cert_rate += r.cert_valid;
      s.mean_ms += r.ms;
    }
    s.recovery_rate /= s.trials;
    s.bottom_rate /= s.trials;
    s.conc_rate /= s.trials;
    s.cert_rate /= s.trials;
    s.mean_ms /= s.trials;
    out.push_back(s);
  }
  return out;
}

void WriteCsv(std::ostream& os, const std::vector<TrialResult>& results,
              int trials_per_cell) {
  os << kCsvHeader << '\n';
  for (const TrialResult& r : results) {
    os << CellPrefix(r.cell) << ',' << r.seed << ',' << int(r.recovered) << ','
       << int(r.bottom) << ',' << int(r.conc_pass) << ',' << int(r.cert_valid)
       << ',' << Num(r.ms) << '\n';
  }
  for (const CellSummary& s : Summarize(results, trials_per_cell)) {
    os << CellPrefix(s.cell) << ",aggregate," << Num(s.recovery_rate) << ','
       << Num(s.bottom_rate) << ',' << Num(s.conc_rate) << ','
       << Num(s.cert_rate) << ',' << Num(s.mean_ms) << '\n';
  }
  if (!os) throw Error(ErrorKind::kIoError, "failed to write CSV");
}

json ToJson(const ConcentrationReport& r) {
  json conds = json::array();
  for (const ConditionResult& c : r.conditions) {
    conds.push_back({{"name", c.name},
                     {"lhs", Finite(c.lhs)},
                     {"rhs", Finite(c.rhs)},
                     {"pass", c.pass}});
  }
  return {{"variant", VariantName(r.variant)}, {"pass", r.pass},
          {"conditions", conds}};
}

json ToJson(const ConcentrationConstants& c) {
  return {{"variant", VariantName(c.variant)}, {"c", c.c}};
}

json ToJson(const BinaryVerification& v) {
  return {{"valid", v.valid},
          {"lambda_min", Finite(v.lambda_min)},
          {"lambda2", Finite(v.lambda2)},
          {"residual", Finite(v.residual)},
          {"scale", Finite(v.scale)}};
}

json ToJson(const GeneralVerification& v) {
  return {{"valid", v.valid},
          {"kernel_residual", Finite(v.kernel_residual)},
          {"complementarity", Finite(v.complementarity)},
          {"lambda_min", Finite(v.lambda_min)},
          {"lambda_r1", Finite(v.lambda_r1)},
          {"d_min", Finite(v.d_min)},
          {"b_min_off", Finite(v.b_min_off)},
          {"scale", Finite(v.scale)}};
}

json ToJson(const MechanismOutcome& o) {
  json trace = {{"d_hat", o.trace.d_hat},
                {"noise", o.trace.noise},
                {"threshold", o.trace.threshold},
                {"concentration_pass", o.trace.concentration_pass}};
  if (o.trace.solver_status) {
    trace["solver_status"] = SolveStatusName(*o.trace.solver_status);
  }
  if (o.trace.a_used) trace["a"] = *o.trace.a_used;
  if (o.trace.b_used) trace["b"] = *o.trace.b_used;
  if (!o.trace.note.empty()) trace["note"] = o.trace.note;
  json out = {{"bottom", o.bottom()}, {"trace", trace}};
  if (o.result) {
    // Labels read off the first row of the cluster matrix.
    std::vector<int> row(o.result->n);
    for (int j = 0; j < o.result->n; ++j) row[j] = o.result->at(0, j);
    out["first_row"] = row;
  }
  return out;
}

json ToJson(const SbmParams& p) {
  json j = {{"variant", VariantName(p.variant)}, {"n", p.n}, {"a", p.a},
            {"b", p.b}};
  if (p.variant == Variant::kGssbm) {
    j["rhos"] = p.rhos;
  } else {
    j["rho"] = p.rho;
  }
  if (p.variant == Variant::kCbsbm) j["xi"] = p.xi;
  return j;
}

SbmParams ParamsFromJson(const json& j) {
  if (!j.is_object()) ConfigFail("params must be a JSON object");
  SbmParams p;
  try {
    p.variant = ParseVariant(ValueOf<std::string>(j, "variant", "basbm"));
  } catch (const Error& e) {
    ConfigFail(e.what());
  }
  p.n = ValueOf<int>(j, "n", 0);
  p.a = ValueOf<double>(j, "a", 0.0);
  p.b = ValueOf<double>(j, "b", 0.0);
  p.rho = ValueOf<double>(j, "rho", 0.5);
  p.xi = ValueOf<double>(j, "xi", 0.0);
  p.rhos = ValueOf<std::vector<double>>(j, "rhos", {});
  try {
    ValidateParams(p);
  } catch (const Error& e) {
    ConfigFail(e.what());
  }
  return p;
}

}  // namespace dpsbm
