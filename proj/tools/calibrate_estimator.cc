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


// Monte Carlo calibration of the degree-split parameter estimator. Prints
// error quantiles for both estimator modes so acceptance tolerances can be
// set from data.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "dpsbm/error.h"
#include "dpsbm/privacy.h"
#include "dpsbm/sbm.h"

namespace {

double Quantile(std::vector<double> v, double q) {
  std::sort(v.begin(), v.end());
  const std::size_t k = static_cast<std::size_t>(
      std::ceil(q * static_cast<double>(v.size()))) - 1;
  return v[std::min(k, v.size() - 1)];
}

double Mean(const std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) s += x;
  return s / static_cast<double>(v.size());
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"degree-split estimator calibration"};
  dpsbm::SbmParams p;
  p.variant = dpsbm::Variant::kBasbm;
  p.n = 4000;
  p.a = 20;
  p.b = 2;
  p.rho = 0.3;
  int seeds = 200;
  std::uint64_t first_seed = 100000;
  app.add_option("--n", p.n)->capture_default_str();
  app.add_option("--a", p.a)->capture_default_str();
  app.add_option("--b", p.b)->capture_default_str();
  app.add_option("--rho", p.rho)->capture_default_str();
  app.add_option("--seeds", seeds)->capture_default_str();
  app.add_option("--first-seed", first_seed)->capture_default_str();
  CLI11_PARSE(app, argc, argv);

  std::vector<dpsbm::Graph> graphs;
  for (int s = 0; s < seeds; ++s) {
    graphs.push_back(dpsbm::Generate(p, first_seed + s).first);
  }
  std::printf("n=%d a=%g b=%g rho=%g seeds=%d first_seed=%llu\n", p.n, p.a,
              p.b, p.rho, seeds, static_cast<unsigned long long>(first_seed));
  std::printf("%-12s %9s %9s %9s %9s %9s %9s %9s %9s %9s %8s\n", "mode",
              "mean_a", "mean_b", "mean_rho", "q50|da|", "q90|da|", "max|da|",
              "q50|db|", "q90|db|", "max|db|", "degen");
  for (dpsbm::EstimatorMode mode : {dpsbm::EstimatorMode::kConditionalMean,
                                    dpsbm::EstimatorMode::kLiteral}) {
    std::vector<double> a, b, rho, da, db;
    int degenerate = 0;
    for (const dpsbm::Graph& g : graphs) {
      try {
        const dpsbm::ParamEstimate e = dpsbm::EstimateParams(g, mode);
        a.push_back(e.a);
        b.push_back(e.b);
        rho.push_back(e.rho);
        da.push_back(std::abs(e.a - p.a));
        db.push_back(std::abs(e.b - p.b));
      } catch (const dpsbm::Error&) {
        ++degenerate;
      }
    }
    const std::string name(dpsbm::EstimatorModeName(mode));
    if (a.empty()) {
      std::printf("%-12s all estimates degenerate\n", name.c_str());
      continue;
    }
    std::printf(
        "%-12s %9.4f %9.4f %9.4f %9.4f %9.4f %9.4f %9.4f %9.4f %9.4f %8d\n",
        name.c_str(), Mean(a), Mean(b), Mean(rho), Quantile(da, 0.5),
        Quantile(da, 0.9), Quantile(da, 1.0), Quantile(db, 0.5),
        Quantile(db, 0.9), Quantile(db, 1.0), degenerate);
  }
  return 0;
}
