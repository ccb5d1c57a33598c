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


#include <cmath>
#include <cstdint>
#include <vector>

#include "dpsbm/error.h"
#include "dpsbm/privacy.h"
#include "dpsbm/tolerances.h"

namespace dpsbm {

ParamEstimate EstimateParams(const Graph& g, EstimatorMode mode) {
  const int n = g.n();
  if (n < 2) throw Error(ErrorKind::kInvalidParams, "need n >= 2");
  if (g.alphabet() != Alphabet::kSimple) {
    throw Error(ErrorKind::kAlphabetViolation, "simple graph required");
  }
  const double ln = std::log(static_cast<double>(n));
  const std::vector<std::int64_t> deg = g.Degrees();
  std::vector<double> w(n);
  double mean = 0.0;
  for (int i = 0; i < n; ++i) {
    w[i] = static_cast<double>(deg[i]) / ln;
    mean += w[i];
  }
  mean /= n;
  int low = 0;
  int high = 0;
  int strictly_low = 0;
  int strictly_high = 0;
  double sum_low = 0.0;
  double sum_high = 0.0;
  for (double x : w) {
    if (x <= mean) {
      ++low;
      sum_low += x;
    }
    if (x >= mean) {
      ++high;
      sum_high += x;
    }
    strictly_low += x < mean;
    strictly_high += x > mean;
  }
  if (strictly_low == 0 || strictly_high == 0) {
    throw Error(ErrorKind::kDegenerateEstimate, "all degrees are equal");
  }
  ParamEstimate est;
  est.rho = static_cast<double>(low) / n;
  const double denom = 1.0 - 2.0 * est.rho;
  if (std::abs(denom) < tol::kEstimateDenominator) {
    throw Error(ErrorKind::kDegenerateEstimate,
                "split fraction is too close to 1/2");
  }
  double w_plus;
  double w_minus;
  if (mode == EstimatorMode::kLiteral) {
    w_plus = sum_high / n;
    w_minus = sum_low / n;
  } else {
    w_plus = sum_high / high;
    w_minus = sum_low / low;
  }
  est.a = ((1.0 - est.rho) * w_plus - est.rho * w_minus) / denom;
  est.b = ((1.0 - est.rho) * w_minus - est.rho * w_plus) / denom;
  if (!std::isfinite(est.a) || !std::isfinite(est.b)) {
    throw Error(ErrorKind::kDegenerateEstimate, "estimate is not finite");
  }
  return est;
}

}  // namespace dpsbm
