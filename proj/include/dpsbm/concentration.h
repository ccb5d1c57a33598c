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


// Threshold functions, the three concentration checkers, and the maps that
// move concentration constants under edge flips or estimated parameters.
// Logarithms are natural throughout.

#ifndef DPSBM_CONCENTRATION_H_
#define DPSBM_CONCENTRATION_H_

#include <string>
#include <vector>

#include "dpsbm/graph.h"
#include "dpsbm/linalg.h"
#include "dpsbm/sbm.h"

namespace dpsbm {

// Logarithmic mean (a - b) / (ln a - ln b); equals a when a == b.
double Tau(double a, double b);

// h(alpha) = a rho + b (1 - rho) - sqrt(alpha^2 + 4 rho (1 - rho) a b)
//            + |alpha| / 2 ln(rho b / ((1 - rho) a)).
double HFunction(double alpha, double a, double b, double rho);
// h(x - tau (1 - 2 rho)); decreasing in x for x >= tau (1 - 2 rho).
double HTilde(double x, double a, double b, double rho);
// Chernoff rate of Pr[X - R <= alpha log n] for the binomial difference.
double GRate(double rho1, double rho2, double a, double b, double alpha);
// a (sqrt(1 - xi) - sqrt(xi))^2.
double HCensored(double xi, double a);
// I(x, y) = x - y ln(e x / y), with I(x, 0) = x.
double RateI(double x, double y);

struct ConcentrationConstants {
  Variant variant = Variant::kBasbm;
  // (c1..c4) BASBM, (c1, c2) CBSBM, (c1..c5) GSSBM.
  std::vector<double> c;

  double operator[](int k) const { return c.at(k - 1); }  // 1-based.
};

// b + 2 c2, the GSSBM multiplier of the dual variable lambda*.
double TauTilde(const ConcentrationConstants& cc, double b);

struct ConditionResult {
  std::string name;
  double lhs = 0.0;
  double rhs = 0.0;
  bool pass = false;
};

struct ConcentrationReport {
  Variant variant = Variant::kBasbm;
  std::vector<ConditionResult> conditions;
  bool pass = false;
};

// d*_i = sum_j A_ij s_i s_j - lambda* (2K - n) s_i with lambda* = tau log n / n
// (BASBM); the lambda* term is dropped for CBSBM.
std::vector<double> BinaryDualDegrees(const SymMatrix& a, const GroundTruth& gt,
                                      const SbmParams& params);
// Unit vector orthogonal to sigma* maximizing x^T J x: sqrt((n-K)/(K n)) on
// the +1 cluster and sqrt(K/(n (n-K))) on the -1 cluster.
std::vector<double> CheckVector(const GroundTruth& gt);

// Margin-backed constants satisfying the stability restrictions for privacy
// level (eps, c_delta). Throws InfeasibleRegime naming the failed inequality.
ConcentrationConstants DefaultConstants(const SbmParams& params, double eps,
                                        double c_delta, double margin = 0.1);

// The matrix overloads accept any symmetric adjacency, e.g. E[A] itself.
ConcentrationReport CheckBasbm(const SymMatrix& a, const GroundTruth& gt,
                               const SbmParams& params,
                               const ConcentrationConstants& cc);
ConcentrationReport CheckCbsbm(const SymMatrix& a, const GroundTruth& gt,
                               const SbmParams& params,
                               const ConcentrationConstants& cc);
ConcentrationReport CheckGssbm(const SymMatrix& a, const GroundTruth& gt,
                               const SbmParams& params,
                               const ConcentrationConstants& cc);
// Dispatches on params.variant.
ConcentrationReport CheckConcentration(const Graph& g, const GroundTruth& gt,
                                       const SbmParams& params,
                                       const ConcentrationConstants& cc);

// Constants valid for every graph within c_delta log n / eps flips of a
// concentrated one. `rho` is the first-cluster fraction (BASBM) and is
// ignored otherwise; GSSBM reads rho_min from `params`. Throws InvalidShift
// when a shifted constant is not positive.
ConcentrationConstants ShiftConstants(const ConcentrationConstants& cc,
                                      double c_delta, double eps,
                                      const SbmParams& params);

// Scales each constant by (1 +- 2 alpha) in the direction that makes its
// condition stricter. Throws InvalidShift.
ConcentrationConstants TightenConstants(const ConcentrationConstants& cc,
                                        double alpha);

}  // namespace dpsbm

#endif  // DPSBM_CONCENTRATION_H_
