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


#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

#include "doctest.h"
#include "dpsbm/error.h"
#include "dpsbm/graph.h"
#include "dpsbm/sbm.h"
#include "dpsbm/sdp.h"
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

Graph RandomGraph(int n, double density, std::mt19937_64& gen,
                  Alphabet alphabet = Alphabet::kSimple) {
  std::bernoulli_distribution edge(density);
  std::bernoulli_distribution sign(0.5);
  GraphBuilder b(n, alphabet);
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      if (!edge(gen)) continue;
      b.Set(i, j, alphabet == Alphabet::kCensored && sign(gen) ? -1 : 1);
    }
  }
  return std::move(b).Build();
}

// Exhaustive binary objective maximum, independent of the library search.
long BestBinaryValue(const Graph& g, int plus) {
  const int n = g.n();
  long best = -1000000;
  for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
    int count = 0;
    for (int i = 0; i < n; ++i) count += (mask >> i) & 1u;
    if (plus >= 0 && count != plus) continue;
    long v = 0;
    for (int i = 0; i < n; ++i) {
      for (int j = i + 1; j < n; ++j) {
        const int si = (mask >> i) & 1u ? 1 : -1;
        const int sj = (mask >> j) & 1u ? 1 : -1;
        v += g.at(i, j) * si * sj;
      }
    }
    best = std::max(best, v);
  }
  return best;
}

long BinaryValue(const Graph& g, const std::vector<int>& s) {
  long v = 0;
  for (int i = 0; i < g.n(); ++i)
    for (int j = i + 1; j < g.n(); ++j) v += g.at(i, j) * s[i] * s[j];
  return v;
}

TEST_SUITE("sdp") {

TEST_CASE("problem construction and feasibility") {
  const Graph g(6, Alphabet::kSimple);
  CHECK(MakeBasbmProblem(g, 3).plus_count == 3);
  CHECK(KindOf([&] { (void)Solve(MakeBasbmProblem(g, 7)); }) ==
        ErrorKind::kInfeasibleProblem);
  CHECK(KindOf([&] { (void)MakeProblem(g, Basbm(7, 3, 2)); }) ==
        ErrorKind::kShapeMismatch);
  CHECK(KindOf([&] { (void)Solve(MakeGssbmProblem(g, {4, 4})); }) ==
        ErrorKind::kInfeasibleProblem);
}

TEST_CASE("above threshold the solver returns the planted partition") {
  const SbmParams p = Basbm(200, 20, 2);
  const auto [g, gt] = Generate(p, 21);
  const SdpProblem prob = MakeProblem(g, p);
  const SdpSolution sol = Solve(prob);
  CHECK(sol.status == SolveStatus::kConverged);
  CHECK(ConstraintViolation(prob, sol.y) <= 1e-5);
  CHECK(IsPsd(sol.y, 1e-6 * sol.y.Frobenius()));
  CHECK(SameClustering(ClusterMatrixFromLabels(p.variant, RoundSolution(sol, prob)),
                       MakeClusterMatrix(gt)));
}

TEST_CASE("cold start and warm start reach the same rounding") {
  const SbmParams p = Basbm(60, 12, 2);
  const auto [g, gt] = Generate(p, 4);
  const SdpProblem prob = MakeProblem(g, p);
  SolverOptions cold;
  cold.warm_start = false;
  cold.max_iters = 20000;
  const SdpSolution a = Solve(prob, cold);
  const SdpSolution b = Solve(prob);
  CHECK(a.objective == doctest::Approx(b.objective).epsilon(1e-4));
  CHECK(RoundSolution(a, prob) == RoundSolution(b, prob));
}

TEST_CASE("censored and general problems") {
  SbmParams c;
  c.variant = Variant::kCbsbm;
  c.n = 120;
  c.a = 10;
  c.xi = 0.05;
  const auto [g, gt] = Generate(c, 3);
  const SdpProblem prob = MakeProblem(g, c);
  const SdpSolution sol = Solve(prob);
  CHECK(ConstraintViolation(prob, sol.y) <= 1e-5);
  CHECK(SameClustering(ClusterMatrixFromLabels(c.variant, RoundSolution(sol, prob)),
                       MakeClusterMatrix(gt)));

  SbmParams r;
  r.variant = Variant::kGssbm;
  r.n = 200;
  r.a = 30;
  r.b = 2;
  r.rhos = {0.4, 0.4};
  const auto [h, ht] = Generate(r, 5);
  const SdpProblem gp = MakeProblem(h, r);
  const SdpSolution gs = Solve(gp);
  CHECK(ConstraintViolation(gp, gs.y) <= 1e-5);
  CHECK(SameClustering(ClusterMatrixFromLabels(r.variant, RoundSolution(gs, gp)),
                       MakeClusterMatrix(ht)));
}

TEST_CASE("binary rounding") {
  const std::vector<int> s = {-1, 1, 1, -1, 1};
  std::vector<double> v(s.begin(), s.end());
  const SymMatrix y = SymMatrix::Outer(v);
  std::vector<int> expect = s;
  for (int& x : expect) x = -x;  // Normalized so that sigma_0 = +1.
  CHECK(RoundBinary(y, std::nullopt) == expect);
  const std::vector<int> k3 = RoundBinary(y, 3);
  CHECK(k3 == s);  // Exactly three +1 entries; no normalization since 2K != n.
  CHECK(KindOf([] { (void)RoundBinary(SymMatrix::Identity(4), std::nullopt); }) ==
        ErrorKind::kDegenerateSpectrum);
}

TEST_CASE("general rounding") {
  const ClusterMatrix z = ClusterMatrixFromLabels(Variant::kGssbm, {2, 1, 2, 0, 1});
  const GroundTruth gt = RoundGeneral(z.ToSym(), {2, 2});
  CHECK(gt.labels == std::vector<int>{1, 2, 1, 0, 2});
  SymMatrix bad = z.ToSym();
  bad.Set(3, 0, 0.9);
  CHECK(KindOf([&] { (void)RoundGeneral(bad, {2, 2}); }) ==
        ErrorKind::kInconsistentRelation);
  SymMatrix chain = SymMatrix::Identity(3);
  chain.Set(0, 1, 1.0);
  chain.Set(1, 2, 1.0);
  CHECK(KindOf([&] { (void)RoundGeneral(chain, {3}); }) ==
        ErrorKind::kInconsistentRelation);
  CHECK(KindOf([&] { (void)RoundGeneral(z.ToSym(), {3, 1}); }) ==
        ErrorKind::kInconsistentRelation);
}

TEST_CASE("exhaustive MLE matches an independent enumeration") {
  std::mt19937_64 gen(77);
  for (int trial = 0; trial < 20; ++trial) {
    const int n = 6 + trial % 4;
    const Graph g = RandomGraph(n, 0.45, gen);
    SbmParams p = Basbm(n, 3, 2, 0.5);
    const std::vector<int> s = MleBruteforceLabels(g, p);
    CHECK(BinaryValue(g, s) == BestBinaryValue(g, n / 2));
    int plus = 0;
    for (int x : s) plus += x > 0;
    CHECK(plus == n / 2);
    SbmParams c = p;
    c.variant = Variant::kCbsbm;
    const Graph h = RandomGraph(n, 0.6, gen, Alphabet::kCensored);
    CHECK(BinaryValue(h, MleBruteforceLabels(h, c)) == BestBinaryValue(h, -1));
  }
}

TEST_CASE("two cliques joined by one edge") {
  GraphBuilder b(4, Alphabet::kSimple);
  b.Set(0, 1, 1);
  b.Set(2, 3, 1);
  b.Set(1, 2, 1);
  const Graph g = std::move(b).Build();
  const SbmParams p = Basbm(4, 3, 2, 0.5);
  CHECK(MleBruteforceLabels(g, p) == std::vector<int>{-1, -1, 1, 1});
  CHECK(KindOf([] {
          (void)MleBruteforceLabels(Graph(17, Alphabet::kSimple), Basbm(17, 3, 2));
        }) == ErrorKind::kTooLarge);
}

TEST_CASE("general MLE enumerates exact cluster sizes") {
  GraphBuilder b(5, Alphabet::kSimple);
  b.Set(0, 3, 1);
  b.Set(1, 4, 1);
  const Graph g = std::move(b).Build();
  SbmParams p;
  p.variant = Variant::kGssbm;
  p.n = 5;
  p.a = 4;
  p.b = 1;
  p.rhos = {0.4, 0.4};
  const std::vector<int> labels = MleBruteforceLabels(g, p);
  CHECK(labels[0] == labels[3]);
  CHECK(labels[1] == labels[4]);
  CHECK(labels[0] != labels[1]);
  CHECK(labels[2] == 0);
}

}  // TEST_SUITE

}  // namespace
}  // namespace dpsbm
