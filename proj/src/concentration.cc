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


#include "dpsbm/concentration.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <string>

#include "dpsbm/error.h"
#include "dpsbm/tolerances.h"

namespace dpsbm {
namespace {

void RequirePositive(double v, const char* name) {
  if (!(v > 0.0) || !std::isfinite(v)) {
    throw Error(ErrorKind::kInvalidParams,
                std::string(name) + " must be positive and finite");
  }
}

// Root of a monotone f on [lo, hi] where f(lo) and f(hi) straddle zero.
double Bisect(const std::function<double(double)>& f, double lo, double hi) {
  double flo = f(lo);
  while (hi - lo > tol::kBisection * std::max(1.0, std::abs(hi))) {
    const double mid = 0.5 * (lo + hi);
    const double fm = f(mid);
    if ((fm > 0.0) == (flo > 0.0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

std::string Fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.6g", v);
  return buf;
}

[[noreturn]] void Infeasible(const std::string& what) {
  throw Error(ErrorKind::kInfeasibleRegime, what);
}

void RequireShape(const SymMatrix& a, const GroundTruth& gt,
                  const SbmParams& params, Variant variant) {
  if (a.n() != gt.n() || a.n() != params.n) {
    throw Error(ErrorKind::kShapeMismatch,
                "adjacency, ground truth and params disagree on n");
  }
  if (params.variant != variant || gt.variant != variant) {
    throw Error(ErrorKind::kShapeMismatch, "variant mismatch");
  }
}

void RequireArity(const ConcentrationConstants& cc, Variant variant) {
  const std::size_t want = variant == Variant::kBasbm   ? 4
                           : variant == Variant::kCbsbm ? 2
                                                        : 5;
  if (cc.variant != variant || cc.c.size() != want) {
    throw Error(ErrorKind::kShapeMismatch,
                "constants do not match the model variant");
  }
}

ConcentrationReport Finish(Variant variant, std::vector<ConditionResult> conds) {
  ConcentrationReport r;
  r.variant = variant;
  r.pass = std::all_of(conds.begin(), conds.end(),
                       [](const ConditionResult& c) { return c.pass; });
  r.conditions = std::move(conds);
  return r;
}

double NoiseNorm(const SymMatrix& a, const GroundTruth& gt,
                 const SbmParams& params) {
  return SpectralNorm(a - ExpectedAdjacency(params, gt));
}

}  // namespace

double Tau(double a, double b) {
  RequirePositive(a, "a");
  RequirePositive(b, "b");
  if (std::abs(a - b) <= 1e-12 * std::max(a, b)) return 0.5 * (a + b);
  return (a - b) / (std::log(a) - std::log(b));
}

double HFunction(double alpha, double a, double b, double rho) {
  RequirePositive(a, "a");
  RequirePositive(b, "b");
  if (!(rho > 0.0 && rho < 1.0)) {
    throw Error(ErrorKind::kInvalidParams, "rho must lie in (0, 1)");
  }
  return a * rho + b * (1.0 - rho) -
         std::sqrt(alpha * alpha + 4.0 * rho * (1.0 - rho) * a * b) +
         0.5 * std::abs(alpha) * std::log(rho * b / ((1.0 - rho) * a));
}

double HTilde(double x, double a, double b, double rho) {
  return HFunction(x - Tau(a, b) * (1.0 - 2.0 * rho), a, b, rho);
}

double GRate(double rho1, double rho2, double a, double b, double alpha) {
  RequirePositive(rho1, "rho1");
  RequirePositive(rho2, "rho2");
  RequirePositive(a, "a");
  RequirePositive(b, "b");
  const double gamma = std::sqrt(alpha * alpha + 4.0 * rho1 * rho2 * a * b);
  const double arg = (gamma - alpha) * a * rho1 / ((gamma + alpha) * b * rho2);
  if (!(arg > 0.0) || !std::isfinite(arg)) {
    throw Error(ErrorKind::kDomainError, "log argument is not positive");
  }
  return a * rho1 + b * rho2 - gamma - 0.5 * alpha * std::log(arg);
}

double HCensored(double xi, double a) {
  if (!(xi >= 0.0 && xi <= 0.5)) {
    throw Error(ErrorKind::kInvalidParams, "xi must lie in [0, 0.5]");
  }
  RequirePositive(a, "a");
  const double d = std::sqrt(1.0 - xi) - std::sqrt(xi);
  return a * d * d;
}

double RateI(double x, double y) {
  RequirePositive(x, "x");
  if (!(y >= 0.0) || !std::isfinite(y)) {
    throw Error(ErrorKind::kInvalidParams, "y must be nonnegative");
  }
  if (y == 0.0) return x;
  return x - y * std::log(std::exp(1.0) * x / y);
}

double TauTilde(const ConcentrationConstants& cc, double b) {
  RequireArity(cc, Variant::kGssbm);
  return b + 2.0 * cc[2];
}

std::vector<double> BinaryDualDegrees(const SymMatrix& a, const GroundTruth& gt,
                                      const SbmParams& params) {
  const int n = a.n();
  if (gt.n() != n || params.n != n) {
    throw Error(ErrorKind::kShapeMismatch, "size mismatch");
  }
  if (!IsBinary(gt.variant)) {
    throw Error(ErrorKind::kShapeMismatch, "binary ground truth required");
  }
  double shift = 0.0;
  if (params.variant == Variant::kBasbm) {
    const double lambda = Tau(params.a, params.b) * params.log_n() / n;
    shift = lambda * (2.0 * gt.PlusCount() - n);
  }
  std::vector<double> d(n);
  for (int i = 0; i < n; ++i) {
    const int si = gt.labels[i];
    double sum = 0.0;
    for (int j = 0; j < n; ++j) sum += a(i, j) * gt.labels[j];
    d[i] = si * sum - shift * si;
  }
  return d;
}

std::vector<double> CheckVector(const GroundTruth& gt) {
  const int n = gt.n();
  const int k = gt.PlusCount();
  std::vector<double> x(n, 0.0);
  if (n < 2) throw Error(ErrorKind::kInvalidParams, "need n >= 2");
  if (k == 0 || k == n) {
    // Every unit vector orthogonal to sigma* has x^T J x = 0.
    x[0] = std::sqrt(0.5);
    x[1] = -std::sqrt(0.5);
    return x;
  }
  const double plus = std::sqrt(static_cast<double>(n - k) / (1.0 * k * n));
  const double minus = std::sqrt(static_cast<double>(k) / (1.0 * n * (n - k)));
  for (int i = 0; i < n; ++i) x[i] = gt.labels[i] > 0 ? plus : minus;
  return x;
}

ConcentrationConstants DefaultConstants(const SbmParams& params, double eps,
                                        double c_delta, double margin) {
  ValidateParams(params);
  RequirePositive(eps, "eps");
  if (!(c_delta >= 0.0)) {
    throw Error(ErrorKind::kInvalidParams, "c_delta must be nonnegative");
  }
  RequirePositive(margin, "margin");
  const double ce = c_delta / eps;
  const double a = params.a;
  const double b = params.b;
  ConcentrationConstants cc;
  cc.variant = params.variant;

  switch (params.variant) {
    case Variant::kBasbm: {
      const double rho = std::min(params.rho, 1.0 - params.rho);
      const double tau = Tau(a, b);
      const double left = tau * (1.0 - 2.0 * rho);
      const double target = 1.0 + margin;
      if (!(HTilde(ce, a, b, rho) > 1.0)) {
        Infeasible("h~(c/eps) = " + Fmt(HTilde(ce, a, b, rho)) + " <= 1");
      }
      const double root_lhs = std::sqrt(a) - std::sqrt(b * (1.0 + std::log(a / b)));
      const double root_rhs = std::sqrt(ce * std::log(a / b));
      if (!(root_lhs > root_rhs)) {
        Infeasible("sqrt(a) - sqrt(b (1 + ln(a/b))) = " + Fmt(root_lhs) +
                   " <= sqrt(c ln(a/b) / eps) = " + Fmt(root_rhs));
      }
      if (!(HTilde(left, a, b, rho) > target)) {
        Infeasible("h~ never reaches 1 + margin");
      }
      double hi = std::max(left, 1.0);
      while (HTilde(hi, a, b, rho) > target) hi *= 2.0;
      const double c4 = Bisect(
          [&](double x) { return HTilde(x, a, b, rho) - target; }, left, hi);
      if (c4 < ce) {
        Infeasible("c4 = " + Fmt(c4) + " < c/eps = " + Fmt(ce));
      }
      const double c2 = std::min(ce + margin, tau - b - margin);
      if (!(c2 > ce)) {
        Infeasible("tau - b - margin = " + Fmt(tau - b - margin) +
                   " <= c/eps = " + Fmt(ce));
      }
      cc.c = {3.0 * std::sqrt(a), c2, 2.0 * std::sqrt(a), c4};
      return cc;
    }
    case Variant::kCbsbm: {
      const double h = HCensored(params.xi, a);
      if (!(h > 1.0)) Infeasible("h(xi, a) = " + Fmt(h) + " <= 1");
      if (!(ce + margin < a - margin)) {
        Infeasible("c/eps = " + Fmt(ce) + " is not below a with margin");
      }
      cc.c = {3.0 * std::sqrt(a), ce + margin};
      return cc;
    }
    case Variant::kGssbm: {
      const double rmin = params.rho_min();
      const double target = 1.0 / rmin + margin;
      // Upper limit on b + 2 c2 from the within-cluster degree tail.
      if (!(a > target)) Infeasible("I(a, 0) = a <= 1/rho_min + margin");
      const double upper = Bisect(
          [&](double y) { return RateI(a, y) - target; }, 0.0, a);
      // Lower limit on the cross-count thresholds from the Poisson tail.
      double hi = 2.0 * b + 1.0;
      while (RateI(b, hi) < target) hi *= 2.0;
      const double y_min = Bisect(
          [&](double y) { return RateI(b, y) - target; }, b, hi);
      const double lo_c2 = std::max(y_min - b, ce / rmin) + margin;
      const double hi_c2 = 0.5 * (upper - b) - margin;
      if (!(lo_c2 < hi_c2)) {
        Infeasible("no c2 in (" + Fmt(lo_c2) + ", " + Fmt(hi_c2) + ")");
      }
      const double c2 = 0.5 * (lo_c2 + hi_c2);
      const double c3 = rmin * (b + c2 - y_min);
      const double c5 = rmin * (b + 2.0 * c2 - y_min);
      cc.c = {3.0 * std::sqrt(a), c2, c3, 2.0 * std::sqrt(a), c5};
      return cc;
    }
  }
  throw Error(ErrorKind::kInvalidParams, "unknown variant");
}

ConcentrationReport CheckBasbm(const SymMatrix& a, const GroundTruth& gt,
                               const SbmParams& params,
                               const ConcentrationConstants& cc) {
  RequireShape(a, gt, params, Variant::kBasbm);
  RequireArity(cc, Variant::kBasbm);
  const int n = a.n();
  const double ln = params.log_n();
  const double sq = std::sqrt(ln);
  const double tau = Tau(params.a, params.b);
  const double lambda = tau * ln / n;
  const int k = gt.PlusCount();
  const std::vector<double> d = BinaryDualDegrees(a, gt, params);
  const std::vector<double> x = CheckVector(gt);

  std::vector<ConditionResult> out;
  const double noise = NoiseNorm(a, gt, params);
  out.push_back({"spectral", noise, cc[1] * sq, noise <= cc[1] * sq});

  double xdx = 0.0;
  double sx = 0.0;
  for (int i = 0; i < n; ++i) {
    xdx += d[i] * x[i] * x[i];
    sx += x[i];
  }
  const double jx = (lambda - 0.5 * (params.p() + params.q())) * sx * sx;
  out.push_back({"quadratic", xdx + jx, cc[2] * ln, xdx + jx > cc[2] * ln});

  const double a_in = params.a;
  const double b_out = params.b;
  const double d_plus =
      (k * (a_in - tau) + (n - k) * (tau - b_out) - a_in) * ln / n;
  const double d_minus =
      ((n - k) * (a_in - tau) + k * (tau - b_out) - a_in) * ln / n;
  double dev = 0.0;
  for (int i = 0; i < n; ++i) {
    const double e = d[i] - (gt.labels[i] > 0 ? d_plus : d_minus);
    dev += e * e * x[i] * x[i];
  }
  dev = std::sqrt(dev);
  out.push_back({"degree_deviation", dev, cc[3] * sq, dev <= cc[3] * sq});

  const double dmin = *std::min_element(d.begin(), d.end());
  out.push_back({"min_dual_degree", dmin, cc[4] * ln, dmin >= cc[4] * ln});
  return Finish(Variant::kBasbm, std::move(out));
}

ConcentrationReport CheckCbsbm(const SymMatrix& a, const GroundTruth& gt,
                               const SbmParams& params,
                               const ConcentrationConstants& cc) {
  RequireShape(a, gt, params, Variant::kCbsbm);
  RequireArity(cc, Variant::kCbsbm);
  const double ln = params.log_n();
  std::vector<ConditionResult> out;
  const double noise = NoiseNorm(a, gt, params);
  const double r1 = cc[1] * std::sqrt(ln);
  out.push_back({"spectral", noise, r1, noise <= r1});
  const std::vector<double> d = BinaryDualDegrees(a, gt, params);
  const double dmin = *std::min_element(d.begin(), d.end());
  out.push_back({"min_dual_degree", dmin, cc[2] * ln, dmin >= cc[2] * ln});
  return Finish(Variant::kCbsbm, std::move(out));
}

ConcentrationReport CheckGssbm(const SymMatrix& a, const GroundTruth& gt,
                               const SbmParams& params,
                               const ConcentrationConstants& cc) {
  RequireShape(a, gt, params, Variant::kGssbm);
  RequireArity(cc, Variant::kGssbm);
  const int n = a.n();
  const int r = gt.num_clusters();
  const double ln = params.log_n();
  const double q = params.q();
  const double tt = TauTilde(cc, params.b);
  constexpr double kInf = std::numeric_limits<double>::infinity();

  // e[i * (r + 1) + k] = edges from i into cluster k (k = 0 is outliers).
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

  std::vector<ConditionResult> out;
  const double noise = NoiseNorm(a, gt, params);
  const double r1 = cc[1] * std::sqrt(ln);
  out.push_back({"spectral", noise, r1, noise <= r1});

  // Condition 2 as min_i s_i / rho_k(i) >= (b + 2 c2) log n.
  double s_min = kInf;
  for (int i = 0; i < n; ++i) {
    const int k = gt.labels[i];
    if (k == 0) continue;
    s_min = std::min(s_min, edges(i, k) * n / size(k));
  }
  const double r2 = tt * ln;
  out.push_back({"within_degree", s_min, r2, s_min >= r2});

  // Condition 3 as max (e(i, C_k) - (b + c2) K_k log n / n) <= -c3 log n.
  double slack3 = -kInf;
  for (int i = 0; i < n; ++i) {
    for (int k = 1; k <= r; ++k) {
      if (k == gt.labels[i]) continue;
      slack3 = std::max(slack3, edges(i, k) -
                                    (params.b + cc[2]) * size(k) * ln / n);
    }
  }
  out.push_back({"cross_degree", slack3, -cc[3] * ln, slack3 <= -cc[3] * ln});

  // Condition 4 as min (e(C_k, C_l) - K_k K_l q + 2 sqrt(K_k K_l log n))
  // >= -c4 log n over distinct clusters.
  double slack4 = kInf;
  for (int k = 1; k <= r; ++k) {
    for (int l = 1; l <= r; ++l) {
      if (k == l) continue;
      double ekl = 0.0;
      for (int i = 0; i < n; ++i) {
        if (gt.labels[i] == k) ekl += edges(i, l);
      }
      slack4 = std::min(slack4, ekl - size(k) * size(l) * q +
                                    2.0 * std::sqrt(size(k) * size(l) * ln));
    }
  }
  out.push_back({"cluster_pair", slack4, -cc[4] * ln, slack4 >= -cc[4] * ln});

  // Condition 5 as max over outliers i and clusters k of
  // e(i, C_k) - tau~ K_k log n / n <= -c5 log n.
  double slack5 = -kInf;
  for (int i = 0; i < n; ++i) {
    if (gt.labels[i] != 0) continue;
    for (int k = 1; k <= r; ++k) {
      slack5 = std::max(slack5, edges(i, k) - tt * size(k) * ln / n);
    }
  }
  out.push_back({"outlier_degree", slack5, -cc[5] * ln, slack5 <= -cc[5] * ln});
  return Finish(Variant::kGssbm, std::move(out));
}

ConcentrationReport CheckConcentration(const Graph& g, const GroundTruth& gt,
                                       const SbmParams& params,
                                       const ConcentrationConstants& cc) {
  const SymMatrix a = SymMatrix::FromGraph(g);
  switch (params.variant) {
    case Variant::kBasbm: return CheckBasbm(a, gt, params, cc);
    case Variant::kCbsbm: return CheckCbsbm(a, gt, params, cc);
    case Variant::kGssbm: return CheckGssbm(a, gt, params, cc);
  }
  throw Error(ErrorKind::kInvalidParams, "unknown variant");
}

ConcentrationConstants ShiftConstants(const ConcentrationConstants& cc,
                                      double c_delta, double eps,
                                      const SbmParams& params) {
  RequirePositive(eps, "eps");
  if (!(c_delta >= 0.0)) {
    throw Error(ErrorKind::kInvalidParams, "c_delta must be nonnegative");
  }
  const double ce = c_delta / eps;
  ConcentrationConstants out = cc;
  switch (cc.variant) {
    case Variant::kBasbm: {
      RequireArity(cc, Variant::kBasbm);
      const double rho = params.rho;
      out.c = {cc[1] + std::sqrt(2.0 * ce), cc[2] - ce,
               cc[3] + std::sqrt(2.0 * ce * (1.0 - rho) / rho), cc[4] - ce};
      break;
    }
    case Variant::kCbsbm:
      RequireArity(cc, Variant::kCbsbm);
      out.c = {cc[1] + std::sqrt(8.0 * ce), cc[2] - ce};
      break;
    case Variant::kGssbm:
      RequireArity(cc, Variant::kGssbm);
      out.c = {cc[1] + std::sqrt(2.0 * ce), cc[2] - ce / params.rho_min(),
               cc[3] - ce, cc[4] + ce, cc[5] - ce};
      break;
  }
  for (std::size_t k = 0; k < out.c.size(); ++k) {
    if (!(out.c[k] > 0.0)) {
      throw Error(ErrorKind::kInvalidShift,
                  "shifted c" + std::to_string(k + 1) + " = " + Fmt(out.c[k]) +
                      " is not positive");
    }
  }
  return out;
}

ConcentrationConstants TightenConstants(const ConcentrationConstants& cc,
                                        double alpha) {
  if (!(alpha > 0.0 && alpha <= 0.01)) {
    throw Error(ErrorKind::kInvalidParams, "alpha must lie in (0, 0.01]");
  }
  const double up = 1.0 + 2.0 * alpha;
  const double down = 1.0 - 2.0 * alpha;
  // +1: the constant is a lower-bound requirement or a subtracted slack;
  // -1: it bounds an upper-bound right-hand side or is an added slack.
  std::vector<int> dir;
  switch (cc.variant) {
    case Variant::kBasbm: dir = {-1, +1, -1, +1}; break;
    case Variant::kCbsbm: dir = {-1, +1}; break;
    case Variant::kGssbm: dir = {-1, +1, +1, -1, +1}; break;
  }
  if (dir.size() != cc.c.size()) {
    throw Error(ErrorKind::kShapeMismatch, "constants arity");
  }
  ConcentrationConstants out = cc;
  for (std::size_t k = 0; k < cc.c.size(); ++k) {
    out.c[k] = cc.c[k] * (dir[k] > 0 ? up : down);
    if (!(out.c[k] > 0.0)) {
      throw Error(ErrorKind::kInvalidShift,
                  "tightened c" + std::to_string(k + 1) + " is not positive");
    }
  }
  return out;
}

}  // namespace dpsbm
