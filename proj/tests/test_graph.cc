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


#include <set>
#include <string>
#include <vector>

#include "doctest.h"
#include "dpsbm/error.h"
#include "dpsbm/graph.h"
#include "test_util.h"

namespace dpsbm {
namespace {

using testing::KindOf;

Graph Path(int n) {
  GraphBuilder b(n, Alphabet::kSimple);
  for (int i = 0; i + 1 < n; ++i) b.Set(i, i + 1, 1);
  return std::move(b).Build();
}

TEST_SUITE("graph") {

TEST_CASE("entries are symmetric with a zero diagonal") {
  const Graph g = Path(4).SetEntry(0, 3, 1);
  for (int i = 0; i < 4; ++i) {
    CHECK(g.at(i, i) == 0);
    for (int j = 0; j < 4; ++j) CHECK(g.at(i, j) == g.at(j, i));
  }
  CHECK(g.at(3, 0) == 1);
  CHECK(g.num_pairs() == 6);
  CHECK(g.Degrees() == std::vector<std::int64_t>{2, 2, 2, 2});
  CHECK(KindOf([&] { (void)g.at(0, 4); }) == ErrorKind::kIndexOutOfRange);
}

TEST_CASE("pair indices enumerate the upper triangle") {
  const Graph g(6, Alphabet::kSimple);
  std::set<std::size_t> seen;
  for (int i = 0; i < 6; ++i) {
    for (int j = i + 1; j < 6; ++j) {
      CHECK(g.PairIndex(i, j) == g.PairIndex(j, i));
      seen.insert(g.PairIndex(i, j));
    }
  }
  CHECK(seen.size() == 15);
  CHECK(*seen.rbegin() == 14);
}

TEST_CASE("alphabets are enforced") {
  const Graph s(3, Alphabet::kSimple);
  const Graph c(3, Alphabet::kCensored);
  CHECK(KindOf([&] { (void)s.SetEntry(0, 1, -1); }) ==
        ErrorKind::kAlphabetViolation);
  CHECK(c.SetEntry(0, 1, -1).at(1, 0) == -1);
  CHECK(KindOf([&] { (void)c.SetEntry(0, 1, 2); }) ==
        ErrorKind::kAlphabetViolation);
  CHECK(KindOf([] {
          (void)Graph::FromPacked(3, Alphabet::kSimple, {0, 1});
        }) == ErrorKind::kShapeMismatch);
}

TEST_CASE("deltas and hamming distance") {
  const Graph g = Path(5);
  const Graph h = ApplyDelta(g, {{{0, 1, 0}, {2, 4, 1}}});
  CHECK(HammingDistance(g, h) == 2);
  CHECK(HammingDistance(g, g) == 0);
  CHECK(KindOf([&] { (void)ApplyDelta(g, {{{0, 1, 0}, {1, 0, 1}}}); }) ==
        ErrorKind::kDuplicateEdge);
  CHECK(KindOf([&] { (void)HammingDistance(g, Path(4)); }) ==
        ErrorKind::kShapeMismatch);
}

TEST_CASE("neighbor stream counts, order and distinctness") {
  // Simple: C(10,1) + C(10,2); censored: 2 C(10,1) + 4 C(10,2).
  struct Case {
    Alphabet alphabet;
    std::size_t expected;
  };
  for (const Case& c : {Case{Alphabet::kSimple, 55}, Case{Alphabet::kCensored, 200}}) {
    Graph base(5, c.alphabet);
    if (c.alphabet == Alphabet::kCensored) base = base.SetEntry(1, 3, -1);
    NeighborStream stream(base, 2);
    std::set<std::vector<std::int8_t>> seen;
    std::size_t last = 1;
    while (auto h = stream.Next()) {
      const std::size_t d = HammingDistance(base, *h);
      CHECK(d >= last);
      CHECK(d == static_cast<std::size_t>(stream.current_distance()));
      last = d;
      seen.insert({h->packed().begin(), h->packed().end()});
    }
    CHECK(seen.size() == c.expected);
  }
}

TEST_CASE("neighbor stream radius zero is empty") {
  NeighborStream stream(Path(3), 0);
  CHECK_FALSE(stream.Next().has_value());
}

TEST_CASE("edge list round trip and errors") {
  const Graph g = Path(5).SetEntry(0, 4, 1);
  CHECK(ReadEdgeList(WriteEdgeList(g)) == g);
  Graph c(4, Alphabet::kCensored);
  c = c.SetEntry(0, 1, 1).SetEntry(2, 3, -1);
  CHECK(ReadEdgeList(WriteEdgeList(c)) == c);
  CHECK(KindOf([] { (void)ReadEdgeList("n 3 simple\n0 x\n"); }) ==
        ErrorKind::kParseError);
  CHECK(KindOf([] { (void)ReadEdgeList("n 3 simple\n0 3\n"); }) ==
        ErrorKind::kIndexOutOfRange);
  CHECK(KindOf([] { (void)ReadEdgeList("n 3 simple\n0 1\n1 0\n"); }) ==
        ErrorKind::kDuplicateEdge);
  CHECK(KindOf([] { (void)ReadEdgeList("n 3 censored\n0 1 2\n"); }) ==
        ErrorKind::kAlphabetViolation);
  try {
    (void)ReadEdgeList("n 3 simple\n0 1\nbad\n");
  } catch (const Error& e) {
    CHECK(std::string(e.what()).find("3") != std::string::npos);
  }
}

}  // TEST_SUITE

}  // namespace
}  // namespace dpsbm
