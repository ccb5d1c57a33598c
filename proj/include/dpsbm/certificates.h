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


// Dual certificates witnessing that the ground truth is the unique SDP
// optimum, and their numerical verification.

#ifndef DPSBM_CERTIFICATES_H_
#define DPSBM_CERTIFICATES_H_

#include <vector>

#include "dpsbm/concentration.h"
#include "dpsbm/graph.h"
#include "dpsbm/linalg.h"
#include "dpsbm/sbm.h"
#include "dpsbm/tolerances.h"

namespace dpsbm {

struct BinaryCertificate {
  Variant variant = Variant::kBasbm;
  std::vector<double> d;  // Diagonal of D*.
  double lambda = 0.0;    // 0 for CBSBM.
  SymMatrix s;            // D* - A + lambda J.
};

// Uses params.variant to select the BASBM or CBSBM form.
BinaryCertificate BuildBinary(const SymMatrix& a, const GroundTruth& gt,
                              const SbmParams& params);
BinaryCertificate BuildBinary(const Graph& g, const GroundTruth& gt,
                              const SbmParams& params);

struct BinaryVerification {
  bool valid = false;
  double lambda_min = 0.0;
  double lambda2 = 0.0;
  double residual = 0.0;  // ||S* sigma*||_inf.
  double scale = 0.0;     // ||S*||_2.
};

// Valid iff ||S* sigma*||_inf <= tol ||S*||, lambda_min >= -tol ||S*|| and
// lambda_2 > tol ||S*||.
BinaryVerification VerifyBinary(const BinaryCertificate& cert,
                                const GroundTruth& gt,
                                double tol = tol::kCertificate);

struct GeneralCertificate {
  std::vector<double> d;  // Zero on outliers.
  SymMatrix b;            // Zero whenever k(i) == k(j).
  double eta = 0.0;       // ||A - E[A]||_2.
  double lambda = 0.0;    // tau~ log n / n.
  SymMatrix s;            // D* - B* - A + eta I + lambda J.
};

GeneralCertificate BuildGeneral(const SymMatrix& a, const GroundTruth& gt,
                                const SbmParams& params,
                                const ConcentrationConstants& cc);
GeneralCertificate BuildGeneral(const Graph& g, const GroundTruth& gt,
                                const SbmParams& params,
                                const ConcentrationConstants& cc);

struct GeneralVerification {
  bool valid = false;
  double kernel_residual = 0.0;    // max_k ||S* xi_k||_inf.
  double complementarity = 0.0;    // max |B*_ij Z*_ij|.
  double lambda_min = 0.0;
  double lambda_r1 = 0.0;          // (r+1)-th smallest eigenvalue.
  double d_min = 0.0;              // Over non-outliers; +inf if none.
  double b_min_off = 0.0;          // Over pairs in different groups, not
                                   // both outliers; +inf if none.
  double scale = 0.0;              // ||S*||_2.
};

GeneralVerification VerifyGeneral(const GeneralCertificate& cert,
                                  const GroundTruth& gt,
                                  double tol = tol::kCertificate);

}  // namespace dpsbm

#endif  // DPSBM_CERTIFICATES_H_
