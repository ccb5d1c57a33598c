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

// Numerical tolerances shared across modules.

#ifndef DPSBM_TOLERANCES_H_
#define DPSBM_TOLERANCES_H_

namespace dpsbm::tol {

// Maximum |m_ij - m_ji| accepted when building a symmetric matrix.
inline constexpr double kSymmetry = 1e-12;
// Relative eigenvalue tolerance used by spectral helpers.
inline constexpr double kEigen = 1e-9;
// Default solver stopping tolerance on primal and dual residuals.
inline constexpr double kSolver = 1e-6;
// Relative gap between the two largest eigenvalues below which rounding
// declares the spectrum degenerate.
inline constexpr double kEigenGap = 1e-6;
// Threshold separating same-cluster from different-cluster entries.
inline constexpr double kClusterThreshold = 0.5;
// Certificate verification tolerance, relative to the spectral norm.
inline constexpr double kCertificate = 1e-8;
// Bisection tolerance for constant selection.
inline constexpr double kBisection = 1e-10;
// Default safety margin for constant selection.
inline constexpr double kConstantMargin = 0.1;
// |1 - 2 rho_hat| below which parameter estimation is degenerate.
inline constexpr double kEstimateDenominator = 1e-3;

}  // namespace dpsbm::tol

#endif  // DPSBM_TOLERANCES_H_
