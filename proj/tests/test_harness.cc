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


#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "dpsbm/error.h"
#include "dpsbm/harness.h"
#include "json.hpp"
#include "test_util.h"

namespace dpsbm {
namespace {

using nlohmann::json;
using testing::KindOf;

std::vector<std::string> Lines(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream is(text);
  for (std::string line; std::getline(is, line);) out.push_back(line);
  return out;
}

// Drops the trailing ms column.
std::string WithoutTime(const std::string& row) {
  return row.substr(0, row.rfind(','));
}

TEST_SUITE("harness") {

TEST_CASE("config parsing") {
  const ExperimentConfig c = ParseConfig(json::parse(R"({
    "variant": "basbm", "mode": "fast", "n": [100, 200], "a": 20, "b": 2,
    "eps": [1, 2], "trials": 3, "seed": 9, "threads": 1,
    "solver": {"max_iters": 300}, "budget": {"max_evaluations": 50}
  })"));
  CHECK(c.mode == Mode::kFast);
  CHECK(c.n == std::vector<int>{100, 200});
  CHECK(c.a == std::vector<double>{20});
  CHECK(c.options.solver.max_iters == 300);
  CHECK(c.options.budget.max_evaluations == 50);
  const std::vector<Cell> cells = ExpandGrid(c);
  REQUIRE(cells.size() == 4);
  CHECK(cells[0].params.n == 100);
  CHECK(cells[0].eps == 1.0);
  CHECK(cells[1].eps == 2.0);
  CHECK(cells[2].params.n == 200);

  const ExperimentConfig d = ParseConfig(json::parse(R"({"n": 100, "a": 20, "b": 2})"));
  CHECK(d.options.solver.max_iters == 500);
  CHECK(d.options.budget.max_evaluations == 10000);
  const ExperimentConfig g = ParseConfig(json::parse(
      R"({"variant": "gssbm", "n": 90, "a": 20, "b": 2, "rhos": [[0.3, 0.3], [0.5]]})"));
  CHECK(ExpandGrid(g).size() == 2);
}

TEST_CASE("config errors") {
  const auto kind = [](const char* text) {
    return KindOf([&] { (void)ParseConfig(json::parse(text)); });
  };
  CHECK(kind(R"({"n": 100, "a": 20, "b": 2, "bogus": 1})") == ErrorKind::kConfigError);
  CHECK(kind(R"({"a": 20, "b": 2})") == ErrorKind::kConfigError);
  CHECK(kind(R"({"n": 100, "a": 20})") == ErrorKind::kConfigError);
  CHECK(kind(R"({"n": 100, "a": 2, "b": 20})") == ErrorKind::kConfigError);
  CHECK(kind(R"({"n": 100, "a": 20, "b": 2, "variant": "xyz"})") ==
        ErrorKind::kConfigError);
  CHECK(kind(R"({"n": "many", "a": 20, "b": 2})") == ErrorKind::kConfigError);
  CHECK(kind(R"({"variant": "gssbm", "n": 100, "a": 20, "b": 2})") ==
        ErrorKind::kConfigError);
  CHECK(kind(R"([1, 2])") == ErrorKind::kConfigError);
  CHECK(KindOf([] { (void)LoadConfig("/nonexistent/config.json"); }) ==
        ErrorKind::kConfigError);
}

TEST_CASE("single cell sweep") {
  const ExperimentConfig c = ParseConfig(json::parse(
      R"({"n": 200, "a": 30, "b": 2, "trials": 1, "threads": 1})"));
  const std::vector<TrialResult> results = RunSweep(c);
  REQUIRE(results.size() == 1);
  CHECK(results[0].error.empty());
  CHECK(results[0].recovered);
  CHECK(results[0].cert_valid);
  std::ostringstream os;
  WriteCsv(os, results, c.trials);
  const std::vector<std::string> lines = Lines(os.str());
  REQUIRE(lines.size() == 3);
  CHECK(lines[0] == kCsvHeader);
  CHECK(lines[2].find(",aggregate,") != std::string::npos);
}

TEST_CASE("grid sweep is deterministic") {
  const char* text = R"({"n": [150, 200], "a": [20, 25], "b": 2, "trials": 5,
                         "seed": 4, "diagnostics": false})";
  ExperimentConfig c = ParseConfig(json::parse(text));
  c.threads = 1;
  const std::vector<TrialResult> r1 = RunSweep(c);
  c.threads = 3;
  const std::vector<TrialResult> r2 = RunSweep(c);
  REQUIRE(r1.size() == 20);
  REQUIRE(r2.size() == 20);
  std::ostringstream o1, o2;
  WriteCsv(o1, r1, c.trials);
  WriteCsv(o2, r2, c.trials);
  const std::vector<std::string> l1 = Lines(o1.str());
  const std::vector<std::string> l2 = Lines(o2.str());
  REQUIRE(l1.size() == 1 + 20 + 4);
  REQUIRE(l1.size() == l2.size());
  for (std::size_t i = 1; i < l1.size(); ++i) CHECK(WithoutTime(l1[i]) == WithoutTime(l2[i]));
  // Seeds are distinct across trials and cells.
  for (std::size_t i = 0; i < r1.size(); ++i)
    for (std::size_t j = i + 1; j < r1.size(); ++j) CHECK(r1[i].seed != r1[j].seed);
}

TEST_CASE("summaries") {
  std::vector<TrialResult> rs(4);
  for (int t = 0; t < 4; ++t) {
    rs[t].recovered = t < 3;
    rs[t].bottom = t == 0;
    rs[t].ms = 10.0 * (t + 1);
  }
  const std::vector<CellSummary> s = Summarize(rs, 4);
  REQUIRE(s.size() == 1);
  CHECK(s[0].recovery_rate == doctest::Approx(0.75));
  CHECK(s[0].bottom_rate == doctest::Approx(0.25));
  CHECK(s[0].mean_ms == doctest::Approx(25.0));
}

TEST_CASE("trial errors are recorded") {
  Cell cell;
  cell.params.variant = Variant::kBasbm;
  cell.params.n = 50;
  cell.params.a = 20;
  cell.params.b = 2;
  TrialOptions opts;
  opts.known_params = false;
  cell.mode = Mode::kFast;
  cell.params.variant = Variant::kCbsbm;
  const TrialResult r = RunTrial(cell, 1, opts);
  CHECK_FALSE(r.error.empty());
}

TEST_CASE("json round trip") {
  SbmParams p;
  p.variant = Variant::kGssbm;
  p.n = 90;
  p.a = 20;
  p.b = 2;
  p.rhos = {0.4, 0.3};
  const SbmParams q = ParamsFromJson(ToJson(p));
  CHECK(q.variant == p.variant);
  CHECK(q.n == p.n);
  CHECK(q.rhos == p.rhos);
}

}  // TEST_SUITE

}  // namespace
}  // namespace dpsbm
