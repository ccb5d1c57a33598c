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


#include <atomic>
#include <cmath>
#include <memory>
#include <optional>
#include <vector>

#include "doctest.h"
#include "dpsbm/error.h"
#include "dpsbm/graph.h"
#include "dpsbm/privacy.h"
#include "dpsbm/rng.h"
#include "dpsbm/sbm.h"
#include "test_util.h"

namespace dpsbm {
namespace {

using testing::KindOf;

ClusterMatrix Split(int n, int plus) {
  std::vector<int> labels(n, -1);
  for (int i = 0; i < plus; ++i) labels[i] = 1;
  return ClusterMatrixFromLabels(Variant::kBasbm, labels);
}

// Output changes exactly when pair {0, 1} is present.
ClusterFunction EdgeSwitch() {
  return [](const Graph& g) -> std::optional<ClusterMatrix> {
    return Split(g.n(), g.at(0, 1) ? 1 : 2);
  };
}

// Output changes once the graph has at least `edges` edges.
ClusterFunction EdgeCount(std::int64_t edges) {
  return [edges](const Graph& g) -> std::optional<ClusterMatrix> {
    std::int64_t m = 0;
    for (std::int8_t v : g.packed()) m += v != 0;
    return Split(g.n(), m >= edges ? 1 : 2);
  };
}

ClusterFunction Constant() {
  return [](const Graph& g) -> std::optional<ClusterMatrix> {
    return Split(g.n(), 1);
  };
}

TEST_SUITE("privacy") {

TEST_CASE("privacy parameters") {
  const PrivacyParams p = PrivacyParams::FromExponent(2.0, 2.0, 100);
  CHECK(p.delta == doctest::Approx(1e-4));
  CHECK(p.Threshold() == doctest::Approx(std::log(1e4) / 2.0));
  PrivacyParams bad = p;
  bad.eps = 0;
  CHECK(KindOf([&] { ValidatePrivacy(bad); }) == ErrorKind::kInvalidParams);
  bad = p;
  bad.delta = 1.5;
  CHECK(KindOf([&] { ValidatePrivacy(bad); }) == ErrorKind::kInvalidParams);
  CHECK(StabilityCap(p) == static_cast<int>(std::ceil(p.Threshold())) + 10);
}

TEST_CASE("laplace sampling") {
  CHECK(LaplaceQuantile(0.5, 1.0) == 0.0);
  CHECK(LaplaceQuantile(0.75, 2.0) == doctest::Approx(2.0 * std::log(2.0)));
  CHECK(LaplaceQuantile(0.25, 2.0) == doctest::Approx(-2.0 * std::log(2.0)));
  CounterRng rng(42, 2);
  const int m = 200000;
  const double scale = 0.5;
  double sum = 0.0, abs_sum = 0.0;
  int tail = 0;
  for (int i = 0; i < m; ++i) {
    const double x = SampleLaplace(scale, rng);
    REQUIRE(std::isfinite(x));
    sum += x;
    abs_sum += std::abs(x);
    tail += x > 2.0 * scale;
  }
  // Mean 0 (sd scale sqrt(2 / m)), E|X| = scale, P(X > 2 scale) = e^-2 / 2.
  CHECK(std::abs(sum / m) < 5 * scale * std::sqrt(2.0 / m));
  CHECK(abs_sum / m == doctest::Approx(scale).epsilon(0.01));
  const double pt = std::exp(-2.0) / 2;
  CHECK(std::abs(static_cast<double>(tail) / m - pt) < 5 * std::sqrt(pt / m));
}

TEST_CASE("distance to instability") {
  const Graph g(5, Alphabet::kSimple);
  CHECK(DistanceToInstability(g, Constant(), 2) == 2);
  CHECK(DistanceToInstability(g, Constant(), 0) == 0);
  CHECK(DistanceToInstability(g, EdgeSwitch(), 3) == 1);
  CHECK(DistanceToInstability(g, EdgeCount(2), 3) == 2);
  CHECK(DistanceToInstability(g, EdgeCount(3), 2) == 2);
  const ClusterFunction fail = [](const Graph&) -> std::optional<ClusterMatrix> {
    return std::nullopt;
  };
  CHECK(DistanceToInstability(g, fail, 3) == 0);
  // A failure on a neighbor counts as a change.
  const ClusterFunction fail_near = [](const Graph& h) -> std::optional<ClusterMatrix> {
    if (h.at(3, 4)) return std::nullopt;
    return Split(h.n(), 2);
  };
  CHECK(DistanceToInstability(g, fail_near, 3) == 1);
  SearchBudget budget;
  budget.max_evaluations = 3;
  CHECK(KindOf([&] { (void)DistanceToInstability(g, Constant(), 2, budget); }) ==
        ErrorKind::kBudgetExceeded);
}

TEST_CASE("memoized clustering") {
  auto calls = std::make_shared<std::atomic<int>>(0);
  const ClusterFunction counted = [calls](const Graph& g) {
    ++*calls;
    return EdgeSwitch()(g);
  };
  const ClusterFunction memo = Memoize(counted);
  const Graph g(6, Alphabet::kSimple);
  CHECK(SameClustering(*memo(g), *counted(g)));
  const int before = calls->load();
  (void)memo(g);
  (void)memo(g.SetEntry(0, 1, 1));
  (void)memo(g.SetEntry(0, 1, 1));
  CHECK(calls->load() == before + 1);
}

TEST_CASE("stability mechanism") {
  const PrivacyParams priv = PrivacyParams::FromExponent(1.0, 1.0, 20);
  const Graph g(6, Alphabet::kSimple);
  CounterRng rng(1, 2);
  MechanismHooks hooks;
  hooks.forced_noise = 0.0;
  const MechanismOutcome released = Stbl(g, Constant(), priv, rng, hooks);
  CHECK_FALSE(released.bottom());
  CHECK(released.trace.d_hat == StabilityCap(priv));
  hooks.forced_noise = -static_cast<double>(StabilityCap(priv));
  CHECK(Stbl(g, Constant(), priv, rng, hooks).bottom());
  hooks.forced_noise = 0.0;
  const MechanismOutcome unstable = Stbl(g, EdgeSwitch(), priv, rng, hooks);
  CHECK(unstable.trace.d_hat == 1.0);
  CHECK(unstable.bottom());
  // With real noise the released output equals f(g).
  CounterRng rng2(7, 2);
  const MechanismOutcome r = Stbl(g, Constant(), priv, rng2);
  CHECK_FALSE(r.bottom());
  CHECK(SameClustering(*r.result, Split(6, 1)));
}

TEST_CASE("fast mechanism releases the planted clustering") {
  SbmParams p;
  p.variant = Variant::kBasbm;
  p.n = 300;
  p.a = 30;
  p.b = 2;
  const auto [g, gt] = Generate(p, 3);
  FastConfig config;
  config.params = p;
  const PrivacyParams priv = PrivacyParams::FromExponent(2.0, 2.0, p.n);
  CounterRng rng(11, 2);
  const MechanismOutcome o = StblFast(g, config, priv, rng);
  CHECK(o.trace.concentration_pass);
  CHECK(o.trace.d_hat == doctest::Approx(2.0 * std::log(300.0) / 2.0));
  if (!o.bottom()) CHECK(SameClustering(*o.result, MakeClusterMatrix(gt)));
}

TEST_CASE("fast mechanism on an empty graph is bottom") {
  SbmParams p;
  p.variant = Variant::kBasbm;
  p.n = 6;
  p.a = 3;
  p.b = 1;
  FastConfig config;
  config.params = p;
  const PrivacyParams priv = PrivacyParams::FromExponent(1.0, 1.0, p.n);
  CounterRng rng(5, 2);
  MechanismHooks hooks;
  hooks.forced_noise = 0.0;
  const MechanismOutcome o =
      StblFast(Graph(6, Alphabet::kSimple), config, priv, rng, hooks);
  CHECK(o.bottom());
  CHECK(o.trace.d_hat == 0.0);
}

TEST_CASE("parameter estimator") {
  // Star on 5 vertices: one hub of degree 4 and four leaves of degree 1.
  GraphBuilder b(5, Alphabet::kSimple);
  for (int j = 1; j < 5; ++j) b.Set(0, j, 1);
  const Graph star = std::move(b).Build();
  const double l5 = std::log(5.0);
  const ParamEstimate c = EstimateParams(star);
  CHECK(c.rho == doctest::Approx(0.8));
  CHECK(c.a == doctest::Approx(0.0).scale(1.0));
  CHECK(c.b == doctest::Approx(5.0 / l5));
  const ParamEstimate lit = EstimateParams(star, EstimatorMode::kLiteral);
  CHECK(lit.a == doctest::Approx(0.8 / l5));
  CHECK(lit.b == doctest::Approx(0.8 / l5));

  // Regular graph: all degrees equal.
  GraphBuilder r(6, Alphabet::kSimple);
  for (int i = 0; i < 6; ++i) r.Set(i, (i + 1) % 6, 1);
  CHECK(KindOf([&] { (void)EstimateParams(std::move(r).Build()); }) ==
        ErrorKind::kDegenerateEstimate);
  // Half the vertices below the mean.
  GraphBuilder h(4, Alphabet::kSimple);
  h.Set(0, 1, 1);
  CHECK(KindOf([&] { (void)EstimateParams(std::move(h).Build()); }) ==
        ErrorKind::kDegenerateEstimate);
  CHECK(KindOf([] { (void)EstimateParams(Graph(4, Alphabet::kCensored)); }) ==
        ErrorKind::kAlphabetViolation);
  CHECK(ParseEstimatorMode("literal") == EstimatorMode::kLiteral);
  CHECK(EstimatorModeName(EstimatorMode::kConditionalMean) == "conditional");
}

}  // TEST_SUITE

}  // namespace
}  // namespace dpsbm
