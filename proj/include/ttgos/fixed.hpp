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

// Fixed and periodic conjugacy classes, and generators of fixed subgroups of
// graph maps through the graph X* of fixed edges and INPs.

#ifndef TTGOS_FIXED_HPP_
#define TTGOS_FIXED_HPP_

#include <memory>
#include <string>
#include <vector>

#include "ttgos/inp.hpp"

namespace ttgos {

struct Subdivision {
  std::string edge;
  std::vector<std::string> pieces;
  std::vector<std::uint64_t> occurrences;  // split points, as occurrences in f^power(edge)
};

struct XStar {
  // The subdivided graph, carrying g = f^power_used.
  std::shared_ptr<const System> subdivided;
  int power_used = 1;
  std::vector<Subdivision> subdivisions;
  std::vector<int> vertices;  // g-fixed vertices of the subdivided graph

  struct Arc {
    std::string name;
    int from = 0;
    int to = 0;
    EdgePath h;        // path in the subdivided graph
    int record = -1;   // INP record, or -1 for a fixed edge
  };
  std::vector<Arc> arcs;
  std::vector<int> star_map;  // f* on arcs

  // Subdivided-graph edge -> (original edge, piece index, number of pieces).
  struct Origin {
    Edge edge = 0;
    int piece = 0;
    int pieces = 1;
  };
  std::vector<Origin> origin;  // per oriented subdivided edge
  std::vector<InpRecord> inps;
  std::vector<std::string> diagnostics;
};

struct XStarOptions {
  InpOptions inp;
  int max_power = 64;
  // Power of f to build X* for. 0 picks the least power fixing every
  // periodic edge and INP; a positive q keeps only those fixed by f^q.
  int power = 0;
};

// Throws kDomain unless s is a graph map (point vertex spaces). INPs are
// computed on s itself when every edge grows exponentially, and otherwise
// on to_graph_of_spaces(s).
XStar build_xstar(const System& s, const XStarOptions& options = {});

// Reduced path in the original graph for a path of the subdivided graph
// whose ends are original vertices.
EdgePath to_original(const System& s, const XStar& xs, const EdgePath& p);

// Basis of the fundamental group of the component of P in X*, pushed through
// h, dropping generators already spanned by earlier ones; each generator is
// checked against f^power_used.
std::vector<EdgePath> fixed_subgroup_generators(const System& s, const XStar& xs, int vertex);

// Case of a lift twisted by a fixed element w: checks w is non-trivial, fixed
// and lies in the fixed subgroup at `vertex`; returns {w}.
std::vector<EdgePath> twisted_fixed_subgroup(const System& s, const XStar& xs, int vertex,
                                             const EdgePath& w);

struct FixCertificate {
  enum class Kind { kVertexSpace, kInpConcatenation, kNotPeriodic };
  Kind kind = Kind::kNotPeriodic;
  bool fixed = false;
  int shift = 0;
  int t = 0;                 // legalizing exponent
  ClosedPath loop;           // [f^t(gamma)]
  std::vector<Piece> pieces;
};

std::string to_string(FixCertificate::Kind k);

FixCertificate classify_conjugacy_class(Context& ctx, const InpAnalysis& a, const ClosedPath& gamma,
                                        const LegalizeOptions& options = {});

}  // namespace ttgos

#endif  // TTGOS_FIXED_HPP_
