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

#include "dpsbm/graph.h"

#include <algorithm>
#include <charconv>
#include <set>
#include <utility>

#include "dpsbm/error.h"
#include "dpsbm/simd.h"

namespace dpsbm {
namespace {

std::size_t PackedSize(int n) {
  return static_cast<std::size_t>(n) * static_cast<std::size_t>(n - 1) / 2;
}

std::size_t RowOffset(int n, int i) {
  return static_cast<std::size_t>(i) * (2 * static_cast<std::size_t>(n) - i - 1) / 2;
}

void CheckPair(int n, int i, int j) {
  if (i < 0 || j < 0 || i >= n || j >= n) {
    throw Error(ErrorKind::kIndexOutOfRange,
                "pair (" + std::to_string(i) + ", " + std::to_string(j) +
                    ") outside n=" + std::to_string(n));
  }
  if (i == j) {
    throw Error(ErrorKind::kIndexOutOfRange,
                "diagonal entry " + std::to_string(i) + " is not writable");
  }
}

void CheckValue(Alphabet alphabet, int v) {
  if (!InAlphabet(alphabet, v)) {
    throw Error(ErrorKind::kAlphabetViolation,
                "value " + std::to_string(v) + " not in " +
                    std::string(AlphabetName(alphabet)) + " alphabet");
  }
}

std::size_t PackedIndex(int n, int i, int j) {
  if (i > j) std::swap(i, j);
  return RowOffset(n, i) + static_cast<std::size_t>(j - i - 1);
}

// Alternative values for an entry, in ascending order.
int Alternative(Alphabet alphabet, int current, int choice) {
  if (alphabet == Alphabet::kSimple) return 1 - current;
  int seen = 0;
  for (int v = -1; v <= 1; ++v) {
    if (v == current) continue;
    if (seen++ == choice) return v;
  }
  return current;
}

}  // namespace

std::string_view AlphabetName(Alphabet alphabet) {
  return alphabet == Alphabet::kSimple ? "simple" : "censored";
}

bool InAlphabet(Alphabet alphabet, int value) {
  if (alphabet == Alphabet::kSimple) return value == 0 || value == 1;
  return value >= -1 && value <= 1;
}

Graph::Graph(int n, Alphabet alphabet)
    : n_(n), alphabet_(alphabet), packed_(PackedSize(n), 0) {
  if (n < 0) throw Error(ErrorKind::kInvalidParams, "negative vertex count");
}

Graph Graph::FromPacked(int n, Alphabet alphabet,
                        std::vector<std::int8_t> packed) {
  if (n < 0 || packed.size() != PackedSize(n)) {
    throw Error(ErrorKind::kShapeMismatch, "packed size does not match n");
  }
  for (std::int8_t v : packed) CheckValue(alphabet, v);
  Graph g;
  g.n_ = n;
  g.alphabet_ = alphabet;
  g.packed_ = std::move(packed);
  return g;
}

int Graph::at(int i, int j) const {
  if (i < 0 || j < 0 || i >= n_ || j >= n_) {
    throw Error(ErrorKind::kIndexOutOfRange, "entry query outside graph");
  }
  if (i == j) return 0;
  return packed_[PackedIndex(n_, i, j)];
}

std::size_t Graph::PairIndex(int i, int j) const {
  CheckPair(n_, i, j);
  return PackedIndex(n_, i, j);
}

Graph Graph::SetEntry(int i, int j, int v) const {
  CheckPair(n_, i, j);
  CheckValue(alphabet_, v);
  Graph out = *this;
  out.packed_[PackedIndex(n_, i, j)] = static_cast<std::int8_t>(v);
  return out;
}

std::vector<std::int64_t> Graph::Degrees() const {
  const auto& k = simd::Active();
  std::vector<std::int64_t> deg(n_, 0);
  for (int i = 0; i < n_; ++i) {
    const std::int8_t* row = packed_.data() + RowOffset(n_, i);
    const std::size_t len = static_cast<std::size_t>(n_ - i - 1);
    deg[i] += k.sum_i8(row, len);
    for (std::size_t t = 0; t < len; ++t) deg[i + 1 + t] += row[t];
  }
  return deg;
}

std::vector<double> Graph::Dense() const {
  const std::size_t n = static_cast<std::size_t>(n_);
  std::vector<double> m(n * n, 0.0);
  std::size_t idx = 0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j, ++idx) {
      const double v = packed_[idx];
      m[i * n + j] = v;
      m[j * n + i] = v;
    }
  }
  return m;
}

GraphBuilder::GraphBuilder(int n, Alphabet alphabet)
    : n_(n), alphabet_(alphabet), packed_(PackedSize(n), 0) {}

GraphBuilder::GraphBuilder(const Graph& g)
    : n_(g.n()),
      alphabet_(g.alphabet()),
      packed_(g.packed().begin(), g.packed().end()) {}

void GraphBuilder::Set(int i, int j, int v) {
  CheckPair(n_, i, j);
  CheckValue(alphabet_, v);
  packed_[PackedIndex(n_, i, j)] = static_cast<std::int8_t>(v);
}

int GraphBuilder::Get(int i, int j) const {
  CheckPair(n_, i, j);
  return packed_[PackedIndex(n_, i, j)];
}

void GraphBuilder::SetPacked(std::size_t index, int v) {
  if (index >= packed_.size()) {
    throw Error(ErrorKind::kIndexOutOfRange, "packed index out of range");
  }
  CheckValue(alphabet_, v);
  packed_[index] = static_cast<std::int8_t>(v);
}

Graph GraphBuilder::Build() && {
  return Graph::FromPacked(n_, alphabet_, std::move(packed_));
}

Graph ApplyDelta(const Graph& g, const GraphDelta& delta) {
  GraphBuilder b(g);
  std::set<std::size_t> seen;
  for (const Flip& f : delta.flips) {
    if (!seen.insert(g.PairIndex(f.i, f.j)).second) {
      throw Error(ErrorKind::kDuplicateEdge, "delta repeats a position");
    }
    b.Set(f.i, f.j, f.value);
  }
  return std::move(b).Build();
}

std::size_t HammingDistance(const Graph& g, const Graph& g2) {
  if (g.n() != g2.n() || g.alphabet() != g2.alphabet()) {
    throw Error(ErrorKind::kShapeMismatch, "graphs differ in shape");
  }
  return simd::Active().count_mismatch(g.packed().data(), g2.packed().data(),
                                       g.num_pairs());
}

NeighborStream::NeighborStream(const Graph& base, int radius)
    : base_(base), radius_(radius) {
  if (radius_ <= 0) done_ = true;
}

void NeighborStream::StartDistance(int k) {
  k_ = k;
  if (k > radius_ || static_cast<std::size_t>(k) > base_.num_pairs()) {
    done_ = true;
    return;
  }
  positions_.resize(k);
  for (int t = 0; t < k; ++t) positions_[t] = static_cast<std::size_t>(t);
  choice_.assign(k, 0);
}

bool NeighborStream::AdvanceValues() {
  const int alts = base_.alphabet() == Alphabet::kSimple ? 1 : 2;
  for (int t = k_ - 1; t >= 0; --t) {
    if (++choice_[t] < alts) return true;
    choice_[t] = 0;
  }
  return false;
}

bool NeighborStream::AdvanceCombination() {
  const std::size_t m = base_.num_pairs();
  for (int t = k_ - 1; t >= 0; --t) {
    const std::size_t limit = m - static_cast<std::size_t>(k_ - t);
    if (positions_[t] < limit) {
      ++positions_[t];
      for (int u = t + 1; u < k_; ++u) positions_[u] = positions_[u - 1] + 1;
      return true;
    }
  }
  return false;
}

std::optional<Graph> NeighborStream::Next() {
  if (done_) return std::nullopt;
  if (k_ == 0) {
    StartDistance(1);
  } else if (!AdvanceValues() && !AdvanceCombination()) {
    StartDistance(k_ + 1);
  }
  if (done_) return std::nullopt;
  std::vector<std::int8_t> packed(base_.packed().begin(), base_.packed().end());
  for (int t = 0; t < k_; ++t) {
    const std::size_t p = positions_[t];
    packed[p] = static_cast<std::int8_t>(
        Alternative(base_.alphabet(), packed[p], choice_[t]));
  }
  return Graph::FromPacked(base_.n(), base_.alphabet(), std::move(packed));
}

std::string WriteEdgeList(const Graph& g) {
  std::string out = "n " + std::to_string(g.n()) + " " +
                    std::string(AlphabetName(g.alphabet())) + "\n";
  std::size_t idx = 0;
  for (int i = 0; i < g.n(); ++i) {
    for (int j = i + 1; j < g.n(); ++j, ++idx) {
      const int v = g.packed()[idx];
      if (v == 0) continue;
      out += std::to_string(i) + " " + std::to_string(j);
      if (g.alphabet() == Alphabet::kCensored) out += " " + std::to_string(v);
      out += "\n";
    }
  }
  return out;
}

namespace {

std::vector<std::string_view> SplitTokens(std::string_view line) {
  std::vector<std::string_view> tokens;
  std::size_t pos = 0;
  while (pos < line.size()) {
    while (pos < line.size() && (line[pos] == ' ' || line[pos] == '\t' ||
                                 line[pos] == '\r')) {
      ++pos;
    }
    std::size_t end = pos;
    while (end < line.size() && line[end] != ' ' && line[end] != '\t' &&
           line[end] != '\r') {
      ++end;
    }
    if (end > pos) tokens.push_back(line.substr(pos, end - pos));
    pos = end;
  }
  return tokens;
}

Error ParseFailure(int line_no, const std::string& what) {
  return Error(ErrorKind::kParseError,
               "line " + std::to_string(line_no) + ": " + what);
}

long long ParseInt(std::string_view token, int line_no) {
  long long v = 0;
  const char* first = token.data();
  if (!token.empty() && token[0] == '+') ++first;
  auto [ptr, ec] = std::from_chars(first, token.data() + token.size(), v);
  if (ec != std::errc() || ptr != token.data() + token.size()) {
    throw ParseFailure(line_no, "expected integer, got '" +
                                    std::string(token) + "'");
  }
  return v;
}

}  // namespace

Graph ReadEdgeList(std::string_view text) {
  int line_no = 0;
  std::size_t pos = 0;
  std::optional<GraphBuilder> builder;
  Alphabet alphabet = Alphabet::kSimple;
  std::set<std::pair<int, int>> seen;
  while (pos <= text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;
    const auto tokens = SplitTokens(line);
    if (tokens.empty()) {
      if (end == text.size()) break;
      continue;
    }
    if (!builder) {
      if (tokens.size() != 3 || tokens[0] != "n") {
        throw ParseFailure(line_no, "expected header 'n <count> <alphabet>'");
      }
      const long long n = ParseInt(tokens[1], line_no);
      if (n < 0 || n > (1 << 20)) throw ParseFailure(line_no, "bad vertex count");
      if (tokens[2] == "simple") {
        alphabet = Alphabet::kSimple;
      } else if (tokens[2] == "censored") {
        alphabet = Alphabet::kCensored;
      } else {
        throw ParseFailure(line_no, "unknown alphabet '" +
                                        std::string(tokens[2]) + "'");
      }
      builder.emplace(static_cast<int>(n), alphabet);
      continue;
    }
    const bool censored = alphabet == Alphabet::kCensored;
    if (tokens.size() < 2 || tokens.size() > 3 ||
        (censored && tokens.size() != 3)) {
      throw ParseFailure(line_no, censored ? "expected 'i j label'"
                                           : "expected 'i j [label]'");
    }
    const long long i = ParseInt(tokens[0], line_no);
    const long long j = ParseInt(tokens[1], line_no);
    const long long v = tokens.size() == 3 ? ParseInt(tokens[2], line_no) : 1;
    if (i < 0 || j < 0 || i >= builder->n() || j >= builder->n() || i == j) {
      throw Error(ErrorKind::kIndexOutOfRange,
                  "line " + std::to_string(line_no) + ": pair (" +
                      std::to_string(i) + ", " + std::to_string(j) +
                      ") invalid for n=" + std::to_string(builder->n()));
    }
    const std::pair<int, int> key =
        std::minmax(static_cast<int>(i), static_cast<int>(j));
    if (!seen.insert(key).second) {
      throw Error(ErrorKind::kDuplicateEdge,
                  "line " + std::to_string(line_no) + ": pair repeated");
    }
    if (!InAlphabet(alphabet, static_cast<int>(v))) {
      throw Error(ErrorKind::kAlphabetViolation,
                  "line " + std::to_string(line_no) + ": label " +
                      std::to_string(v));
    }
    builder->Set(key.first, key.second, static_cast<int>(v));
  }
  if (!builder) throw ParseFailure(line_no, "missing header");
  return std::move(*builder).Build();
}

}  // namespace dpsbm
