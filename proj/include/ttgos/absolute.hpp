// Copyright 2026 The ttgos Authors
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

// Graph maps (all vertex spaces are points): transition matrix, growth,
// collapsing the polynomially growing part into vertex spaces, and Whitehead
// graphs.

#ifndef TTGOS_ABSOLUTE_HPP_
#define TTGOS_ABSOLUTE_HPP_

#include <cstdint>
#include <utility>
#include <vector>

#include "ttgos/gos.hpp"

namespace ttgos {

struct TransitionAnalysis {
  // matrix[i][j]: crossings of edge i (either direction) by f(edge j).
  std::vector<std::vector<std::uint64_t>> matrix;
  bool primitive = false;
  int witness = 0;  // least k with matrix^k > 0, when primitive
  std::vector<bool> exponential;
  std::vector<int> scc;  // strongly connected component per edge
  int num_scc = 0;
};

// Throws kDomain unless s.is_absolute().
TransitionAnalysis transition_analysis(const System& s);

// Vertex spaces become the components of the polynomially growing subgraph;
// the exponentially growing edges become top edges. Throws kDomain when no
// edge grows exponentially.
System to_graph_of_spaces(const System& s);

struct WhiteheadGraph {
  int space = 0;
  std::vector<Edge> directions;             // oriented edges leaving the space
  std::vector<std::pair<Edge, Edge>> arcs;  // sorted, first < second
  bool connected = true;
};

// Arcs are the turns in the image_turn-closure of the turns used by the f(e).
std::vector<WhiteheadGraph> whitehead_graphs(const System& s);

}  // namespace ttgos

#endif  // TTGOS_ABSOLUTE_HPP_
