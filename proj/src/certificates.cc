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


#include "dpsbm/certificates.h"

#include <algorithm>
#include <cmath>
#include <limits>

#include "dpsbm/error.h"

namespace dpsbm {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void RequireShape(const SymMatrix& a, const GroundTruth& gt,
                  const SbmParams& params) {
  if (a.n() != gt.n() || a.n() != params.n) {
    throw Error(ErrorKind::kShapeMismatch,
                "adjacency, ground truth and params disagree on n");
  }
  if (gt.variant != params.variant) {
    throw Error(ErrorKind::kShapeMismatch, "variant mismatch");
  }
}

}  // namespace

BinaryCertificate BuildBinary(const SymMatrix& a, const GroundTruth& gt,
                              const SbmParams& params) {
  RequireShape(a, gt, params);
  if (!IsBinary(params.variant)) {
    throw Error(ErrorKind::kShapeMismatch, "binary variant required");
  }
  const int n = a.n();
  BinaryCertificate cert;
  cert.variant = params.variant;
  cert.d = BinaryDualDegrees(a, gt, params);
  cert.lambda = params.variant == Variant::kBasbm
                    ? Tau(params.a, params.b) * params.log_n() / n
                    : 0.0;
  cert.s = SymMatrix(n, cert.lambda);
  cert.s -= a;
  for (int i = 0; i < n; ++i) cert.s.Set(i, i, cert.s(i, i) + cert.d[i]);
  return cert;
}

BinaryCertificate BuildBinary(const Graph& g, const GroundTruth& gt,
                              const SbmParams& params) {
  return BuildBinary(SymMatrix::FromGraph(g), gt, params);
}

BinaryVerification VerifyBinary(const BinaryCertificate& cert,
                                const GroundTruth& gt, double tol) {
  const int n = cert.s.n();
  if (gt.n() != n) throw Error(ErrorKind::kShapeMismatch, "size mismatch");
  BinaryVerification v;
  std::vector<double> sigma(gt.labels.begin(), gt.labels.end());
  const std::vector<double> r = cert.s.Multiply(sigma);
  for (double x : r) v.residual = std::max(v.residual, std::abs(x));
  v.scale = SpectralNorm(cert.s);
  const double t = tol * v.scale;
  const std::vector<double> low = SmallestEigenvalues(cert.s, std::min(2, n));
  v.lambda_min = low[0];
  v.lambda2 = n >= 2 ? low[1] : kInf;
  v.valid = v.residual <= t && v.lambda_min >= -t && v.lambda2 > t;
  return v;
}

GeneralCertificate BuildGeneral(const SymMatrix& a, const GroundTruth& gt,
                                const SbmParams& params,
                                const ConcentrationConstants& cc) {
  RequireShape(a, gt, params);
  if (params.variant != Variant::kGssbm) {
    throw Error(ErrorKind::kShapeMismatch, "GSSBM required");
  }
  const int n = a.n();
  const int r = gt.num_clusters();
  if (r < 1) throw Error(ErrorKind::kInvalidParams, "need at least one cluster");
  GeneralCertificate cert;
  cert.eta = SpectralNorm(a - ExpectedAdjacency(params, gt));
  cert.lambda = TauTilde(cc, params.b) * params.log_n() / n;

  // e(i, C_k) for k in 0..r.
  std::vector<double> e(static_cast<std::size_t>(n) * (r + 1), 0.0);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      e[static_cast<std::size_t>(i) * (r + 1) + gt.labels[j]] += a(i, j);
    }
  }
  auto edges = [&](int i, int k) {
    return e[static_cast<std::size_t>(i) * (r + 1) + k];
  };
  auto size = [&](int k) { return static_cast<double>(gt.sizes[k - 1]); };
  std::vector<double> cluster_pair(static_cast<std::size_t>(r + 1) * (r + 1),
                                   0.0);
  for (int i = 0; i < n; ++i) {
    for (int k = 0; k <= r; ++k) {
      cluster_pair[static_cast<std::size_t>(gt.labels[i]) * (r + 1) + k] +=
          edges(i, k);
    }
  }

  cert.d.assign(n, 0.0);
  for (int i = 0; i < n; ++i) {
    const int k = gt.labels[i];
    if (k != 0) cert.d[i] = edges(i, k) - cert.eta - cert.lambda * size(k);
  }
  cert.b = SymMatrix(n);
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      const int ki = gt.labels[i];
      const int kj = gt.labels[j];
      if (ki == kj) continue;
      double v = cert.lambda;
      if (ki != 0 && kj != 0) {
        v += cluster_pair[static_cast<std::size_t>(ki) * (r + 1) + kj] /
                 (size(ki) * size(kj)) -
             edges(i, kj) / size(kj) - edges(j, ki) / size(ki);
      } else if (ki == 0) {
        v -= edges(i, kj) / size(kj);
      } else {
        v -= edges(j, ki) / size(ki);
      }
      cert.b.Set(i, j, v);
    }
  }
  cert.s = SymMatrix(n, cert.lambda);
  cert.s -= cert.b;
  cert.s -= a;
  for (int i = 0; i < n; ++i) {
    cert.s.Set(i, i, cert.s(i, i) + cert.d[i] + cert.eta);
  }
  return cert;
}

GeneralCertificate BuildGeneral(const Graph& g, const GroundTruth& gt,
                                const SbmParams& params,
                                const ConcentrationConstants& cc) {
  return BuildGeneral(SymMatrix::FromGraph(g), gt, params, cc);
}

GeneralVerification VerifyGeneral(const GeneralCertificate& cert,
                                  const GroundTruth& gt, double tol) {
  const int n = cert.s.n();
  const int r = gt.num_clusters();
  if (gt.n() != n) throw Error(ErrorKind::kShapeMismatch, "size mismatch");
  GeneralVerification v;
  v.scale = SpectralNorm(cert.s);
  const double t = tol * v.scale;

  for (int k = 1; k <= r; ++k) {
    std::vector<double> xi(n, 0.0);
    for (int i = 0; i < n; ++i) xi[i] = gt.labels[i] == k ? 1.0 : 0.0;
    for (double x : cert.s.Multiply(xi)) {
      v.kernel_residual = std::max(v.kernel_residual, std::abs(x));
    }
  }
  v.d_min = kInf;
  v.b_min_off = kInf;
  for (int i = 0; i < n; ++i) {
    const int ki = gt.labels[i];
    if (ki != 0) v.d_min = std::min(v.d_min, cert.d[i]);
    for (int j = 0; j < n; ++j) {
      const int kj = gt.labels[j];
      if (i != j && ki == kj && ki != 0) {
        v.complementarity = std::max(v.complementarity, std::abs(cert.b(i, j)));
      }
      if (ki != kj) v.b_min_off = std::min(v.b_min_off, cert.b(i, j));
    }
  }
  const int want = std::min(r + 1, n);
  const std::vector<double> low = SmallestEigenvalues(cert.s, want);
  v.lambda_min = low[0];
  v.lambda_r1 = r + 1 <= n ? low[r] : kInf;
  v.valid = v.kernel_residual <= t && v.complementarity <= t &&
            v.lambda_min >= -t && v.lambda_r1 > t && v.d_min > 0.0 &&
            v.b_min_off > 0.0;
  return v;
}

}  // namespace dpsbm
