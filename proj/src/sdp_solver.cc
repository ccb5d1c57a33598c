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

// Two-block ADMM for min -<A,X> s.t. X psd, Z in P, X = Z, where P holds the
// affine and entrywise constraints. Scaled form:
//   X <- proj_psd(Z - U + A / rho)
//   Z <- proj_P(X + U)
//   U <- U + X - Z

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <optional>
#include <string>
#include <utility>

#include "dpsbm/error.h"
#include "dpsbm/sdp.h"
#include "dpsbm/simd.h"

namespace dpsbm {
namespace {

constexpr int kBalanceEvery = 25;
constexpr double kBalanceRatio = 10.0;
constexpr double kBalanceFactor = 2.0;
constexpr double kMinStep = 1e-6;
constexpr double kMaxStep = 1e6;

double SumSquares(const std::vector<int>& sizes) {
  double s = 0.0;
  for (int k : sizes) s += static_cast<double>(k) * k;
  return s;
}

void CheckProblem(const SdpProblem& prob) {
  const int n = prob.n();
  if (n < 1) throw Error(ErrorKind::kInfeasibleProblem, "empty problem");
  if (prob.variant == Variant::kBasbm &&
      (prob.plus_count < 0 || prob.plus_count > n)) {
    throw Error(ErrorKind::kInfeasibleProblem, "plus count outside [0, n]");
  }
  if (prob.variant == Variant::kGssbm) {
    long total = 0;
    for (int k : prob.sizes) {
      if (k < 1) throw Error(ErrorKind::kInfeasibleProblem, "empty cluster");
      total += k;
    }
    if (prob.sizes.empty() || total > n) {
      throw Error(ErrorKind::kInfeasibleProblem,
                  "cluster sizes do not fit in n vertices");
    }
  }
}

// Michelot iteration: mu with sum_t max(v_t - mu, 0) = c, for c >= 0.
double WaterLevel(const std::vector<double>& v, double c) {
  if (v.empty()) return 0.0;
  if (c <= 0.0) return *std::max_element(v.begin(), v.end());
  double mu = (std::accumulate(v.begin(), v.end(), 0.0) - c) /
              static_cast<double>(v.size());
  for (int iter = 0; iter < 200; ++iter) {
    double sum = 0.0;
    std::size_t count = 0;
    for (double x : v) {
      if (x > mu) {
        sum += x;
        ++count;
      }
    }
    const double next = (sum - c) / static_cast<double>(count);
    if (next <= mu) break;
    mu = next;
  }
  return mu;
}

// theta with sum_i clip(d_i - theta, 0, 1) = s.
double DiagonalLevel(const std::vector<double>& d, double s) {
  double lo = *std::min_element(d.begin(), d.end()) - 1.0;
  double hi = *std::max_element(d.begin(), d.end());
  if (s >= static_cast<double>(d.size())) return lo;
  for (int iter = 0; iter < 200 && hi - lo > 0.0; ++iter) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    double g = 0.0;
    for (double x : d) g += std::clamp(x - mid, 0.0, 1.0);
    (g > s ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

class AffineProjector {
 public:
  explicit AffineProjector(const SdpProblem& prob) : prob_(prob) {
    const int n = prob.n();
    if (prob.variant == Variant::kGssbm) {
      off_.resize(static_cast<std::size_t>(n) * (n - 1) / 2);
      diag_.resize(n);
    }
  }

  // z <- projection of v onto P.
  void Project(const double* v, double* z) {
    const int n = prob_.n();
    const std::size_t nn = static_cast<std::size_t>(n) * n;
    const auto& k = simd::Active();
    switch (prob_.variant) {
      case Variant::kCbsbm:
        std::copy(v, v + nn, z);
        for (int i = 0; i < n; ++i) z[static_cast<std::size_t>(i) * n + i] = 1.0;
        break;
      case Variant::kBasbm: {
        double trace = 0.0;
        for (int i = 0; i < n; ++i) trace += v[static_cast<std::size_t>(i) * n + i];
        const double off_sum = k.sum(v, nn) - trace;
        const double m = static_cast<double>(n - 2 * prob_.plus_count);
        const double target = m * m - n;
        const double mu =
            n > 1 ? (off_sum - target) / (static_cast<double>(n) * (n - 1)) : 0.0;
        std::copy(v, v + nn, z);
        k.add_scalar(z, -mu, nn);
        for (int i = 0; i < n; ++i) z[static_cast<std::size_t>(i) * n + i] = 1.0;
        break;
      }
      case Variant::kGssbm: {
        const double s1 = std::accumulate(prob_.sizes.begin(), prob_.sizes.end(), 0.0);
        const double s2 = SumSquares(prob_.sizes);
        std::size_t t = 0;
        for (int i = 0; i < n; ++i) {
          diag_[i] = v[static_cast<std::size_t>(i) * n + i];
          for (int j = i + 1; j < n; ++j) off_[t++] = v[static_cast<std::size_t>(i) * n + j];
        }
        // Upper triangle carries half of the off-diagonal mass.
        const double mu = WaterLevel(off_, 0.5 * (s2 - s1));
        const double theta = DiagonalLevel(diag_, s1);
        k.clamp_shift(z, v, mu, 0.0, std::numeric_limits<double>::infinity(), nn);
        for (int i = 0; i < n; ++i) {
          z[static_cast<std::size_t>(i) * n + i] =
              std::clamp(diag_[i] - theta, 0.0, 1.0);
        }
        break;
      }
    }
  }

 private:
  const SdpProblem& prob_;
  std::vector<double> off_;
  std::vector<double> diag_;
};

double LogMean(double x, double y) {
  if (x > 0 && y > 0 && std::abs(x - y) > 1e-12 * std::max(x, y)) {
    return (x - y) / (std::log(x) - std::log(y));
  }
  return 0.5 * (x + y);
}

// Primal point and scaled dual that are optimal when `labels` is the unique
// solution and the induced multipliers certify it. Multipliers follow the
// dual certificates with densities estimated from the labelled graph.
struct Guess {
  SymMatrix z;
  SymMatrix u;  // Unscaled multiplier; the solver divides by rho.
};

Guess GuessFromLabels(const SdpProblem& prob, const std::vector<int>& labels) {
  const int n = prob.n();
  const SymMatrix& a = prob.a;
  Guess g{ClusterMatrixFromLabels(prob.variant, labels).ToSym(), SymMatrix(n)};
  if (IsBinary(prob.variant)) {
    std::vector<double> sigma(labels.begin(), labels.end());
    const std::vector<double> as = a.Multiply(sigma);
    double lambda = 0.0;
    if (prob.variant == Variant::kBasbm) {
      double intra = 0, inter = 0, intra_pairs = 0, inter_pairs = 0;
      for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
          if (labels[i] == labels[j]) {
            intra += a(i, j);
            intra_pairs += 1;
          } else {
            inter += a(i, j);
            inter_pairs += 1;
          }
        }
      }
      lambda = LogMean(intra_pairs > 0 ? intra / intra_pairs : 0.0,
                       inter_pairs > 0 ? inter / inter_pairs : 0.0);
    }
    const double mass = std::accumulate(sigma.begin(), sigma.end(), 0.0);
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) g.u.Set(i, j, lambda);
    }
    for (int i = 0; i < n; ++i) {
      const double d = as[i] * sigma[i] - lambda * mass * sigma[i];
      g.u.Set(i, i, d + lambda);
    }
    return g;
  }
  // General structure: A + S = D - B + eta I + lambda J.
  const int r = static_cast<int>(prob.sizes.size());
  std::vector<std::vector<double>> e(n, std::vector<double>(r + 1, 0.0));
  std::vector<double> size(r + 1, 0.0);
  for (int i = 0; i < n; ++i) size[labels[i]] += 1;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) e[i][labels[j]] += a(i, j);
  }
  double intra = 0, intra_pairs = 0, rest = 0, rest_pairs = 0;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      if (labels[i] != 0 && labels[i] == labels[j]) {
        intra += a(i, j);
        intra_pairs += 1;
      } else {
        rest += a(i, j);
        rest_pairs += 1;
      }
    }
  }
  const double p = intra_pairs > 0 ? intra / intra_pairs : 0.0;
  const double q = rest_pairs > 0 ? rest / rest_pairs : 0.0;
  SymMatrix centered = a;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      const bool same = labels[i] != 0 && labels[i] == labels[j];
      centered.Set(i, j, a(i, j) - (same ? p : q));
    }
  }
  const double eta = SpectralNorm(centered);
  const double lambda = 0.5 * (p + q);
  std::vector<std::vector<double>> cross(r + 1, std::vector<double>(r + 1, 0.0));
  for (int i = 0; i < n; ++i) {
    for (int k = 0; k <= r; ++k) cross[labels[i]][k] += e[i][k];
  }
  for (int i = 0; i < n; ++i) {
    const int ki = labels[i];
    for (int j = i + 1; j < n; ++j) {
      const int kj = labels[j];
      double b = 0.0;
      if (ki != kj && ki != 0 && kj != 0) {
        b = lambda + cross[ki][kj] / (size[ki] * size[kj]) - e[i][kj] / size[kj] -
            e[j][ki] / size[ki];
      } else if (ki == 0 && kj != 0) {
        b = lambda - e[i][kj] / size[kj];
      } else if (kj == 0 && ki != 0) {
        b = lambda - e[j][ki] / size[ki];
      }
      g.u.Set(i, j, lambda - b);
    }
    const double d = ki != 0 ? e[i][ki] - eta - lambda * size[ki] : 0.0;
    g.u.Set(i, i, d + eta + lambda);
  }
  return g;
}

std::optional<std::vector<int>> SpectralGuess(const SdpProblem& prob) {
  if (prob.variant == Variant::kGssbm || prob.n() < 2) return std::nullopt;
  const int n = prob.n();
  SymMatrix m = prob.a;
  if (prob.variant == Variant::kBasbm) {
    const double density = m.Sum() / (static_cast<double>(n) * (n - 1));
    simd::Active().add_scalar(m.data(), -density, m.size());
  }
  try {
    return RoundBinary(m, prob.variant == Variant::kBasbm
                              ? std::optional<int>(prob.plus_count)
                              : std::nullopt);
  } catch (const Error&) {
    return std::nullopt;
  }
}

class Admm {
 public:
  Admm(const SdpProblem& prob, const SolverOptions& opts)
      : prob_(prob),
        opts_(opts),
        n_(prob.n()),
        nn_(static_cast<std::size_t>(n_) * n_),
        psd_(n_),
        affine_(prob),
        x_(nn_, 0.0),
        z_(nn_, 0.0),
        u_(nn_, 0.0),
        w_(nn_, 0.0),
        z_prev_(nn_, 0.0),
        rho_(opts.step) {}

  SdpSolution Run() {
    const auto& k = simd::Active();
    if (opts_.warm_start) {
      if (auto labels = SpectralGuess(prob_)) {
        StartFrom(GuessFromLabels(prob_, *labels));
      }
    }
    SdpSolution sol;
    sol.variant = prob_.variant;
    std::vector<int> last_polish;
    int iter = 0;
    double r = 0.0, s = 0.0;
    while (iter < opts_.max_iters) {
      ++iter;
      Step(x_.data(), z_.data(), u_.data(), &r, &s);
      if (r <= opts_.tol && s <= opts_.tol) {
        sol.status = SolveStatus::kConverged;
        break;
      }
      if (opts_.polish_every > 0 && iter % opts_.polish_every == 0 &&
          TryPolish(&last_polish, &r, &s)) {
        ++iter;
        sol.status = SolveStatus::kConverged;
        break;
      }
      if (opts_.adaptive_step && iter % kBalanceEvery == 0) Rebalance(r, s);
    }
    sol.iterations = iter;
    sol.primal_residual = r;
    sol.dual_residual = s;
    sol.y = SymMatrix::FromDense(n_, Symmetrized(z_));
    sol.objective = k.dot(prob_.a.data(), z_.data(), nn_);
    return sol;
  }

 private:
  void StartFrom(const Guess& g) {
    std::copy(g.z.data(), g.z.data() + nn_, z_.begin());
    for (std::size_t t = 0; t < nn_; ++t) u_[t] = g.u.data()[t] / rho_;
  }

  // One ADMM sweep on the given state; returns normalized residuals.
  void Step(double* x, double* z, double* u, double* r, double* s) {
    const auto& k = simd::Active();
    k.sub_axpy(x, z, u, prob_.a.data(), 1.0 / rho_, nn_);
    psd_.Project(x);
    std::copy(z, z + nn_, z_prev_.begin());
    k.add(w_.data(), x, u, nn_);
    affine_.Project(w_.data(), z);
    k.accumulate_difference(u, x, z, nn_);
    const double z_norm = std::sqrt(k.dot(z, z, nn_));
    const double u_norm = rho_ * std::sqrt(k.dot(u, u, nn_));
    *r = std::sqrt(k.squared_distance(x, z, nn_)) / std::max(1.0, z_norm);
    *s = rho_ * std::sqrt(k.squared_distance(z, z_prev_.data(), nn_)) /
         std::max(1.0, u_norm);
  }

  // Rounds the current iterate and tests whether the induced primal-dual
  // pair is already a fixed point. Keeps the current state otherwise.
  bool TryPolish(std::vector<int>* last, double* r, double* s) {
    std::vector<int> labels;
    try {
      SymMatrix zs = SymMatrix::FromDense(n_, Symmetrized(z_));
      if (prob_.variant == Variant::kGssbm) {
        labels = RoundGeneral(zs, prob_.sizes).labels;
      } else {
        labels = RoundBinary(zs, prob_.variant == Variant::kBasbm
                                     ? std::optional<int>(prob_.plus_count)
                                     : std::nullopt);
      }
    } catch (const Error&) {
      return false;
    }
    if (labels == *last) return false;
    *last = labels;
    const Guess g = GuessFromLabels(prob_, labels);
    std::vector<double> x(nn_), z(g.z.data(), g.z.data() + nn_), u(nn_);
    for (std::size_t t = 0; t < nn_; ++t) u[t] = g.u.data()[t] / rho_;
    std::vector<double> saved_prev = z_prev_;
    double rr, ss;
    Step(x.data(), z.data(), u.data(), &rr, &ss);
    if (rr <= opts_.tol && ss <= opts_.tol) {
      x_ = std::move(x);
      z_ = std::move(z);
      u_ = std::move(u);
      *r = rr;
      *s = ss;
      return true;
    }
    z_prev_ = std::move(saved_prev);
    return false;
  }

  void Rebalance(double r, double s) {
    double factor = 1.0;
    if (r > kBalanceRatio * s && rho_ * kBalanceFactor <= kMaxStep) {
      factor = kBalanceFactor;
    } else if (s > kBalanceRatio * r && rho_ / kBalanceFactor >= kMinStep) {
      factor = 1.0 / kBalanceFactor;
    }
    if (factor != 1.0) {
      rho_ *= factor;
      for (double& v : u_) v /= factor;
    }
  }

  std::vector<double> Symmetrized(const std::vector<double>& m) const {
    std::vector<double> out = m;
    for (int i = 0; i < n_; ++i) {
      for (int j = i + 1; j < n_; ++j) {
        const double v = 0.5 * (out[static_cast<std::size_t>(i) * n_ + j] +
                                out[static_cast<std::size_t>(j) * n_ + i]);
        out[static_cast<std::size_t>(i) * n_ + j] = v;
        out[static_cast<std::size_t>(j) * n_ + i] = v;
      }
    }
    return out;
  }

  const SdpProblem& prob_;
  const SolverOptions& opts_;
  int n_;
  std::size_t nn_;
  PsdProjector psd_;
  AffineProjector affine_;
  std::vector<double> x_, z_, u_, w_, z_prev_;
  double rho_;
};

}  // namespace

SdpProblem MakeBasbmProblem(const Graph& g, int plus_count) {
  SdpProblem p;
  p.variant = Variant::kBasbm;
  p.a = SymMatrix::FromGraph(g);
  p.plus_count = plus_count;
  return p;
}

SdpProblem MakeCbsbmProblem(const Graph& g) {
  SdpProblem p;
  p.variant = Variant::kCbsbm;
  p.a = SymMatrix::FromGraph(g);
  return p;
}

SdpProblem MakeGssbmProblem(const Graph& g, std::vector<int> sizes) {
  SdpProblem p;
  p.variant = Variant::kGssbm;
  p.a = SymMatrix::FromGraph(g);
  p.sizes = std::move(sizes);
  return p;
}

SdpProblem MakeProblem(const Graph& g, const SbmParams& params) {
  if (params.n != g.n()) {
    throw Error(ErrorKind::kShapeMismatch, "params.n differs from graph size");
  }
  switch (params.variant) {
    case Variant::kBasbm:
      return MakeBasbmProblem(g, ClusterSize(params.rho, params.n));
    case Variant::kCbsbm:
      return MakeCbsbmProblem(g);
    case Variant::kGssbm:
      return MakeGssbmProblem(g, ClusterSizes(params));
  }
  throw Error(ErrorKind::kInvalidParams, "unknown variant");
}

double ConstraintViolation(const SdpProblem& prob, const SymMatrix& y) {
  const int n = prob.n();
  double worst = 0.0;
  switch (prob.variant) {
    case Variant::kBasbm:
    case Variant::kCbsbm:
      for (int i = 0; i < n; ++i) worst = std::max(worst, std::abs(y(i, i) - 1.0));
      if (prob.variant == Variant::kBasbm) {
        const double m = static_cast<double>(n - 2 * prob.plus_count);
        worst = std::max(worst, std::abs(y.Sum() - m * m));
      }
      break;
    case Variant::kGssbm: {
      const double s1 = std::accumulate(prob.sizes.begin(), prob.sizes.end(), 0.0);
      worst = std::max(worst, std::abs(y.Trace() - s1));
      worst = std::max(worst, std::abs(y.Sum() - SumSquares(prob.sizes)));
      for (int i = 0; i < n; ++i) {
        worst = std::max(worst, y(i, i) - 1.0);
        for (int j = 0; j < n; ++j) worst = std::max(worst, -y(i, j));
      }
      break;
    }
  }
  return worst;
}

std::string_view SolveStatusName(SolveStatus s) {
  return s == SolveStatus::kConverged ? "converged" : "max_iters";
}

SdpSolution Solve(const SdpProblem& prob, const SolverOptions& opts) {
  CheckProblem(prob);
  if (!(opts.tol > 0) || opts.max_iters < 1 || !(opts.step > 0)) {
    throw Error(ErrorKind::kInvalidParams, "bad solver options");
  }
  Admm admm(prob, opts);
  return admm.Run();
}

}  // namespace dpsbm
