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
#include <numbers>
#include <random>
#include <set>
#include <utility>
#include <vector>

#include "doctest.h"
#include "dpsbm/concentration.h"
#include "dpsbm/error.h"
#include "dpsbm/graph.h"
#include "dpsbm/sbm.h"
#include "test_util.h"

namespace dpsbm {
namespace {

using testing::KindOf;

SbmParams Basbm(int n, double a, double b, double rho = 0.5) {
  SbmParams p;
  p.variant = Variant::kBasbm;
  p.n = n;
  p.a = a;
  p.b = b;
  p.rho = rho;
  return p;
}

SbmParams Gssbm(int n, double a, double b, std::vector<double> rhos) {
  SbmParams p;
  p.variant = Variant::kGssbm;
  p.n = n;
  p.a = a;
  p.b = b;
  p.rhos = std::move(rhos);
  return p;
}

const ConditionResult& Condition(const ConcentrationReport& r,
                                 const std::string& name) {
  for (const ConditionResult& c : r.conditions) {
    if (c.name == name) return c;
  }
  FAIL("missing condition " << name);
  return r.conditions.front();
}

TEST_SUITE("concentration") {

TEST_CASE("logarithmic mean") {
  CHECK(Tau(4, 4) == 4.0);
  CHECK(Tau(20, 2) == doctest::Approx(18.0 / std::log(10.0)).epsilon(1e-14));
  CHECK(Tau(20, 2) == doctest::Approx(7.8173).epsilon(1e-4));
  std::mt19937_64 gen(1);
  std::uniform_real_distribution<double> u(0.1, 50.0);
  for (int i = 0; i < 100; ++i) {
    double a = u(gen), b = u(gen);
    if (a < b) std::swap(a, b);
    if (a == b) continue;
    CHECK(Tau(a, b) > b);
    CHECK(Tau(a, b) < a);
  }
  CHECK(KindOf([] { (void)Tau(0, 1); }) == ErrorKind::kInvalidParams);
}

TEST_CASE("threshold function h") {
  // At rho = 1/2, h~(0) = (sqrt a - sqrt b)^2 / 2.
  CHECK(HTilde(0, 8, 2, 0.5) == doctest::Approx(1.0).epsilon(1e-14));
  for (double a : {3.0, 6.0, 10.0, 30.0}) {
    const double b = 2.0;
    const double expect = std::pow(std::sqrt(a) - std::sqrt(b), 2) / 2.0;
    CHECK(HTilde(0, a, b, 0.5) == doctest::Approx(expect));
    CHECK((HTilde(0, a, b, 0.5) > 1.0) == (std::sqrt(a) - std::sqrt(b) > std::sqrt(2.0)));
  }
  std::mt19937_64 gen(2);
  std::uniform_real_distribution<double> u(-20.0, 20.0);
  for (int i = 0; i < 200; ++i) {
    const double x = u(gen), y = u(gen);
    if (std::abs(x) == std::abs(y)) continue;
    const double hx = HFunction(x, 30, 2, 0.3);
    const double hy = HFunction(y, 30, 2, 0.3);
    CHECK((std::abs(x) < std::abs(y) ? hx > hy : hx < hy));
  }
  CHECK(KindOf([] { (void)HFunction(0, 3, 2, 1.0); }) == ErrorKind::kInvalidParams);
}

TEST_CASE("binomial difference rate") {
  for (double a : {4.0, 8.0, 25.0}) {
    const double r1 = 0.3, r2 = 0.7, b = 2.0;
    const double expect = std::pow(std::sqrt(a * r1) - std::sqrt(b * r2), 2);
    CHECK(GRate(r1, r2, a, b, 0.0) == doctest::Approx(expect));
  }
  CHECK(GRate(0.5, 0.5, 8, 2, 0) == doctest::Approx(1.0));
  // h(-tau (1 - 2 rho) + c) <= g(rho, 1 - rho, a, b, -tau (1 - 2 rho) + c).
  for (double rho : {0.2, 0.35, 0.5}) {
    for (double c : {0.5, 1.0, 2.0, 4.0}) {
      const double a = 20, b = 2;
      const double alpha = -Tau(a, b) * (1 - 2 * rho) + c;
      CHECK(HFunction(alpha, a, b, rho) <= GRate(rho, 1 - rho, a, b, alpha) + 1e-12);
    }
  }
  CHECK(KindOf([] { (void)GRate(0, 1, 3, 2, 0); }) == ErrorKind::kInvalidParams);
}

TEST_CASE("censored threshold and rate I") {
  CHECK(HCensored(0, 7) == 7.0);
  CHECK(HCensored(0.5, 7) == doctest::Approx(0.0));
  CHECK(HCensored(0.05, 8) ==
        doctest::Approx(8 * std::pow(std::sqrt(0.95) - std::sqrt(0.05), 2)));
  CHECK(HCensored(0.05, 8) == doctest::Approx(4.513).epsilon(1e-3));
  CHECK(RateI(2, 2) == doctest::Approx(0.0).scale(1.0));
  CHECK(RateI(4, 1) == doctest::Approx(4 - (1 + std::log(4.0))));
  CHECK(RateI(3, 0) == 3.0);
  std::mt19937_64 gen(3);
  std::uniform_real_distribution<double> u(0.1, 30.0);
  for (int i = 0; i < 200; ++i) {
    const double x = u(gen), y = u(gen);
    CHECK(RateI(x, y) >= 0.0);
  }
  CHECK(KindOf([] { (void)RateI(-1, 1); }) == ErrorKind::kInvalidParams);
}

TEST_CASE("check vector identities and optimality") {
  for (double rho : {0.5, 0.3, 0.1}) {
    const SbmParams p = Basbm(50, 10, 2, rho);
    const GroundTruth gt = MakeGroundTruth(p);
    const std::vector<double> x = CheckVector(gt);
    const int n = p.n, k = gt.PlusCount();
    double norm = 0, dot = 0, sum = 0;
    for (int i = 0; i < n; ++i) {
      norm += x[i] * x[i];
      dot += x[i] * gt.labels[i];
      sum += x[i];
    }
    CHECK(norm == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(std::abs(dot) <= 1e-9);
    const double jx = sum * sum;
    CHECK(jx == doctest::Approx(4.0 * k * (n - k) / n).epsilon(1e-9));
    // No random feasible direction beats it.
    std::mt19937_64 gen(4);
    std::normal_distribution<double> g;
    for (int t = 0; t < 10000; ++t) {
      std::vector<double> y(n);
      double proj = 0, ss = 0, s = 0;
      for (int i = 0; i < n; ++i) {
        y[i] = g(gen) + (t % 2 ? 1.0 : 0.0);
        proj += y[i] * gt.labels[i];
      }
      for (int i = 0; i < n; ++i) y[i] -= proj / n * gt.labels[i];
      for (double v : y) ss += v * v;
      for (double v : y) s += v;
      CHECK(s * s / ss <= jx + 1e-9);
    }
  }
}

TEST_CASE("default constants") {
  const SbmParams p = Basbm(500, 30, 2);
  const ConcentrationConstants cc = DefaultConstants(p, 2.0, 2.0);
  const double tau = Tau(30, 2);
  CHECK(tau == doctest::Approx(28 / std::log(15.0)));
  CHECK(cc[2] <= tau - 2 - 0.1 + 1e-12);
  CHECK(cc[2] > 1.0);
  CHECK(HTilde(cc[4], 30, 2, 0.5) == doctest::Approx(1.1).epsilon(1e-8));
  CHECK(cc[4] >= 1.0);
  CHECK(KindOf([] { (void)DefaultConstants(Basbm(500, 3, 2), 0.1, 2.0); }) ==
        ErrorKind::kInfeasibleRegime);
  SbmParams c;
  c.variant = Variant::kCbsbm;
  c.n = 300;
  c.a = 8;
  c.xi = 0.05;
  const ConcentrationConstants ccc = DefaultConstants(c, 1.0, 2.0);
  CHECK(ccc.c.size() == 2);
  CHECK(ccc[2] > 2.0);
  CHECK(ccc[2] < 8.0);
  const ConcentrationConstants gc =
      DefaultConstants(Gssbm(300, 40, 2, {0.3, 0.3, 0.3}), 1.0, 2.0);
  REQUIRE(gc.c.size() == 5);
  for (double v : gc.c) CHECK(v > 0.0);
  const double rmin = 0.3;
  CHECK(RateI(40, TauTilde(gc, 2)) > 1 / rmin);
  CHECK(RateI(2, 2 + gc[2] - gc[3] / rmin) >= 1 / rmin);
  CHECK(RateI(2, 2 + 2 * gc[2] - gc[5] / rmin) >= 1 / rmin);
}

TEST_CASE("basbm checker") {
  const SbmParams p = Basbm(500, 30, 2);
  const ConcentrationConstants cc = DefaultConstants(p, 2.0, 2.0);
  const auto [g, gt] = Generate(p, 17);
  const ConcentrationReport r = CheckConcentration(g, gt, p, cc);
  CHECK(r.pass);
  CHECK(r.conditions.size() == 4);

  const SymMatrix expected = ExpectedAdjacency(p, gt);
  const ConcentrationReport re = CheckBasbm(expected, gt, p, cc);
  CHECK(Condition(re, "spectral").lhs == doctest::Approx(0.0).scale(1.0));
  CHECK(Condition(re, "spectral").pass);

  // Isolating a first-cluster vertex breaks the degree condition.
  GraphBuilder b(g);
  for (int j = 1; j < p.n; ++j) b.Set(0, j, 0);
  const ConcentrationReport ri =
      CheckConcentration(std::move(b).Build(), gt, p, cc);
  CHECK_FALSE(Condition(ri, "min_dual_degree").pass);
  CHECK_FALSE(ri.pass);

  // Pure function.
  const ConcentrationReport r2 = CheckConcentration(g, gt, p, cc);
  CHECK(r2.conditions[1].lhs == r.conditions[1].lhs);
  CHECK(KindOf([&] {
          (void)CheckConcentration(Graph(10, Alphabet::kSimple), gt, p, cc);
        }) == ErrorKind::kShapeMismatch);
}

TEST_CASE("cbsbm checker") {
  SbmParams p;
  p.variant = Variant::kCbsbm;
  p.n = 60;
  p.a = 8;
  p.xi = 0.0;
  const GroundTruth gt = MakeGroundTruth(p);
  GraphBuilder b(p.n, Alphabet::kCensored);
  for (int i = 0; i < p.n; ++i)
    for (int j = i + 1; j < p.n; ++j) b.Set(i, j, gt.labels[i] * gt.labels[j]);
  const Graph full = std::move(b).Build();
  const ConcentrationConstants cc = DefaultConstants(p, 1.0, 2.0);
  const ConcentrationReport r = CheckConcentration(full, gt, p, cc);
  CHECK(Condition(r, "min_dual_degree").lhs == doctest::Approx(p.n - 1));
  CHECK(Condition(r, "min_dual_degree").pass);
  GroundTruth wrong = gt;
  wrong.labels[0] = -wrong.labels[0];
  const ConcentrationReport rw = CheckConcentration(full, wrong, p, cc);
  CHECK(Condition(rw, "min_dual_degree").lhs < 0);
  CHECK_FALSE(rw.pass);

  p.n = 500;
  p.xi = 0.05;
  const auto [g, gt2] = Generate(p, 6);
  CHECK(CheckConcentration(g, gt2, p, cc).pass);
}

TEST_CASE("gssbm checker") {
  // One cluster covering everything: conditions 3 to 5 are vacuous.
  const SbmParams one = Gssbm(40, 8, 2, {1.0});
  const GroundTruth gt1 = MakeGroundTruth(one);
  GraphBuilder b(one.n, Alphabet::kSimple);
  for (int i = 0; i < one.n; ++i)
    for (int j = i + 1; j < one.n; ++j) b.Set(i, j, 1);
  ConcentrationConstants cc1;
  cc1.variant = Variant::kGssbm;
  cc1.c = {100, 1, 1, 1, 1};
  const ConcentrationReport r1 = CheckConcentration(std::move(b).Build(), gt1, one, cc1);
  CHECK(Condition(r1, "within_degree").pass);
  CHECK(Condition(r1, "cross_degree").pass);
  CHECK(Condition(r1, "cluster_pair").pass);
  CHECK(Condition(r1, "outlier_degree").pass);

  const SbmParams p = Gssbm(600, 40, 2, {0.3, 0.3, 0.3});
  const ConcentrationConstants cc = DefaultConstants(p, 1.0, 2.0);
  const auto [g, gt] = Generate(p, 9);
  const ConcentrationReport r = CheckConcentration(g, gt, p, cc);
  for (const ConditionResult& c : r.conditions) {
    CAPTURE(c.name);
    CAPTURE(c.lhs);
    CAPTURE(c.rhs);
    CHECK(c.pass);
  }
  // An outlier adjacent to all of the last cluster.
  GraphBuilder h(g);
  const int outlier = p.n - 1;
  REQUIRE(gt.labels[outlier] == 0);
  for (int j = 0; j < p.n; ++j) {
    if (gt.labels[j] == 3) h.Set(outlier, j, 1);
  }
  const ConcentrationReport rh = CheckConcentration(std::move(h).Build(), gt, p, cc);
  CHECK_FALSE(Condition(rh, "outlier_degree").pass);
}

TEST_CASE("shifted constants") {
  ConcentrationConstants cc;
  cc.variant = Variant::kBasbm;
  cc.c = {3, 2, 3, 2};
  const SbmParams p = Basbm(100, 10, 2);
  const ConcentrationConstants s = ShiftConstants(cc, 1.0, 1.0, p);
  CHECK(s[1] == doctest::Approx(3 + std::sqrt(2.0)));
  CHECK(s[2] == doctest::Approx(1.0));
  CHECK(s[3] == doctest::Approx(3 + std::sqrt(2.0)));
  CHECK(s[4] == doctest::Approx(1.0));
  CHECK(ShiftConstants(cc, 0.0, 1.0, p).c == cc.c);
  CHECK(KindOf([&] { (void)ShiftConstants(cc, 2.0, 1.0, p); }) ==
        ErrorKind::kInvalidShift);
  ConcentrationConstants c2;
  c2.variant = Variant::kCbsbm;
  c2.c = {3, 2};
  const ConcentrationConstants s2 = ShiftConstants(c2, 1.0, 2.0, p);
  CHECK(s2[1] == doctest::Approx(3 + 2.0));
  CHECK(s2[2] == doctest::Approx(1.5));
}

TEST_CASE("persistence under flips") {
  const double eps = 2.0, c = 2.0;
  const SbmParams p = Basbm(500, 30, 2);
  const ConcentrationConstants cc = DefaultConstants(p, eps, c);
  const ConcentrationConstants shifted = ShiftConstants(cc, c, eps, p);
  const int flips = static_cast<int>(std::floor(c * p.log_n() / eps));
  std::mt19937_64 gen(5);
  for (int t = 0; t < 5; ++t) {
    const auto [g, gt] = Generate(p, 100 + t);
    REQUIRE(CheckConcentration(g, gt, p, cc).pass);
    std::uniform_int_distribution<int> v(0, p.n - 1);
    GraphBuilder b(g);
    std::set<std::pair<int, int>> used;
    while (static_cast<int>(used.size()) < flips) {
      int i = v(gen), j = v(gen);
      if (i == j) continue;
      if (i > j) std::swap(i, j);
      if (!used.insert({i, j}).second) continue;
      b.Set(i, j, 1 - b.Get(i, j));
    }
    CHECK(CheckConcentration(std::move(b).Build(), gt, p, shifted).pass);
  }
}

TEST_CASE("tightened constants") {
  ConcentrationConstants cc;
  cc.variant = Variant::kBasbm;
  cc.c = {3, 2, 3, 2};
  const ConcentrationConstants t = TightenConstants(cc, 0.001);
  CHECK(t[4] == doctest::Approx(2.004));
  CHECK(t[2] == doctest::Approx(2.004));
  CHECK(t[1] == doctest::Approx(2.994));
  const ConcentrationConstants tiny = TightenConstants(cc, 1e-12);
  for (int k = 1; k <= 4; ++k) CHECK(tiny[k] == doctest::Approx(cc[k]));
  CHECK(KindOf([&] { (void)TightenConstants(cc, 0.5); }) == ErrorKind::kInvalidParams);
}

TEST_CASE("tightened constants absorb estimation error") {
  const double alpha = 0.001;
  int passes = 0;
  for (int t = 0; t < 200; ++t) {
    const double a = 20.0 + (t % 25);
    const SbmParams p = Basbm(300, a, 2);
    const auto [g, gt] = Generate(p, 1000 + t);
    const ConcentrationConstants cc = DefaultConstants(p, 2.0, 1.0);
    for (double fa : {1 - alpha, 1 + alpha}) {
      for (double fb : {1 - alpha, 1 + alpha}) {
        SbmParams est = p;
        est.a = a * fa;
        est.b = 2 * fb;
        const ConcentrationConstants hat =
            TightenConstants(DefaultConstants(est, 2.0, 1.0), alpha);
        if (CheckConcentration(g, gt, est, hat).pass) {
          ++passes;
          CHECK(CheckConcentration(g, gt, p, cc).pass);
        }
      }
    }
  }
  CHECK(passes > 0);
}

}  // TEST_SUITE

}  // namespace
}  // namespace dpsbm
