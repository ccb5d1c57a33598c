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

// Symmetric graphs over {0,1} or the censored alphabet {-1,0,+1}.

#ifndef DPSBM_GRAPH_H_
#define DPSBM_GRAPH_H_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace dpsbm {

enum class Alphabet { kSimple, kCensored };

std::string_view AlphabetName(Alphabet alphabet);
bool InAlphabet(Alphabet alphabet, int value);

// Immutable graph. Only entries with i < j are stored, packed row by row.
class Graph {
 public:
  Graph() = default;
  // Empty graph on n vertices.
  Graph(int n, Alphabet alphabet);

  // Takes ownership of a packed upper triangle; validates size and alphabet.
  static Graph FromPacked(int n, Alphabet alphabet,
                          std::vector<std::int8_t> packed);

  int n() const { return n_; }
  Alphabet alphabet() const { return alphabet_; }
  std::size_t num_pairs() const { return packed_.size(); }
  std::span<const std::int8_t> packed() const { return packed_; }

  // Entry (i, j); zero on the diagonal. Throws IndexOutOfRange.
  int at(int i, int j) const;

  // Packed offset of pair {i, j}, i != j.
  std::size_t PairIndex(int i, int j) const;

  // Returns a copy with entry {i, j} = v.
  Graph SetEntry(int i, int j, int v) const;

  // Row sums of the adjacency matrix.
  std::vector<std::int64_t> Degrees() const;
  // Row-major dense n x n copy.
  std::vector<double> Dense() const;

  bool operator==(const Graph& other) const = default;

 private:
  int n_ = 0;
  Alphabet alphabet_ = Alphabet::kSimple;
  std::vector<std::int8_t> packed_;
};

// Accumulates entries before freezing them into a Graph.
class GraphBuilder {
 public:
  GraphBuilder(int n, Alphabet alphabet);
  explicit GraphBuilder(const Graph& g);

  void Set(int i, int j, int v);
  int Get(int i, int j) const;
  // Direct packed write; used by generators that iterate pair indices.
  void SetPacked(std::size_t index, int v);
  int n() const { return n_; }
  Graph Build() &&;

 private:
  int n_;
  Alphabet alphabet_;
  std::vector<std::int8_t> packed_;
};

struct Flip {
  int i;
  int j;
  int value;
};

struct GraphDelta {
  std::vector<Flip> flips;
};

// Applies every flip; positions must be distinct.
Graph ApplyDelta(const Graph& g, const GraphDelta& delta);

// Number of unordered pairs whose entries differ. Throws ShapeMismatch.
std::size_t HammingDistance(const Graph& g, const Graph& g2);

// Lazily enumerates every graph at distance 1..radius from a base graph,
// each once, in nondecreasing distance order. Within a distance, changed
// positions follow lexicographic combination order.
class NeighborStream {
 public:
  NeighborStream(const Graph& base, int radius);

  std::optional<Graph> Next();
  int current_distance() const { return k_; }

 private:
  bool AdvanceCombination();
  bool AdvanceValues();
  void StartDistance(int k);

  Graph base_;
  int radius_;
  int k_ = 0;
  std::vector<std::size_t> positions_;
  std::vector<int> choice_;  // Index into the alternative values.
  bool done_ = false;
};

// Text I/O. Header "n <count> <simple|censored>", then one "i j" (simple) or
// "i j label" (censored) line per nonzero entry, 0-based, sorted by (i, j).
std::string WriteEdgeList(const Graph& g);
Graph ReadEdgeList(std::string_view text);

}  // namespace dpsbm

#endif  // DPSBM_GRAPH_H_
