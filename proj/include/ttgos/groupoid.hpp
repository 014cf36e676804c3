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

// Stallings folding for maps between finite graphs.

#ifndef TTGOS_GROUPOID_HPP_
#define TTGOS_GROUPOID_HPP_

#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <vector>

#include "ttgos/gos.hpp"

namespace ttgos {

// A finite graph with edges labelled by oriented edges of some target graph
// (label ^ 1 is the reverse label). Label kContract marks an edge whose image
// is a point. fold() turns it into an immersion; with bridge tracking every
// vertex remembers a path to its class representative whose label is
// trivial, which makes lifting of target paths possible.
class Folding {
 public:
  static constexpr int kContract = -1;

  explicit Folding(int num_vertices = 0, bool track_bridges = false);

  int add_vertex();
  int add_edge(int from, int to, int label);  // returns the edge index
  void fold();

  int num_vertices() const { return static_cast<int>(parent_.size()); }
  int num_edges() const { return static_cast<int>(from_.size()); }
  int find(int v) const;
  int num_classes() const;
  int num_live_edges() const;
  // First Betti number of the folded graph (all components).
  long betti() const;
  bool live(int edge) const { return live_[static_cast<std::size_t>(edge)]; }

  int origin(int oe) const { return (oe & 1) ? to_[oe >> 1] : from_[oe >> 1]; }
  int terminus(int oe) const { return (oe & 1) ? from_[oe >> 1] : to_[oe >> 1]; }
  int label(int oe) const;

  // Class reached by reading `labels` from the class of `start`.
  std::optional<int> read(int start, const std::vector<int>& labels) const;
  // Path of oriented edges of the unfolded graph from `start` to `end` whose
  // label reduces to `labels`; freely reduced. Needs bridge tracking.
  std::optional<std::vector<int>> lift(int start, const std::vector<int>& labels, int end) const;

 private:
  void merge(int a, int b, std::vector<int> w);
  void build_index();

  bool track_;
  mutable std::vector<int> parent_;
  std::vector<std::vector<int>> members_;
  std::vector<std::vector<int>> bridge_;
  std::vector<int> from_, to_, label_;
  std::vector<bool> live_;
  std::map<std::pair<int, int>, int> out_;  // (class, label) -> oriented edge
};

void free_reduce(std::vector<int>& word);

struct ImmersionFactorization {
  int source = 0;
  int target = 0;
  long source_betti = 0;
  long folded_betti = 0;
  bool injective = true;
  int folded_vertices = 0;
  struct Arc {
    int from = 0;
    int to = 0;
    LocalEdge label = 0;
  };
  std::vector<Arc> folded_edges;
  std::vector<int> quotient;        // source local vertex -> folded vertex
  std::vector<int> immersion;       // folded vertex -> target local vertex
};

// Folds the vertex map of one space and answers preimage queries. Built once
// per space; queries are const.
class VertexMapFold {
 public:
  VertexMapFold(const System& s, int space);

  const ImmersionFactorization& factorization() const { return info_; }
  // The unique reduced chi from p to q with [f(chi)] == psi, if any. Throws
  // kHypothesis when the vertex map is not pi_1-injective.
  std::optional<LocalPath> preimage(const LocalPath& psi, int p, int q) const;

 private:
  struct Piece {
    int edge;   // source local edge
    int index;  // position in the subdivided chain
  };
  const System* system_;
  int space_;
  Folding fold_;
  std::vector<Piece> pieces_;
  ImmersionFactorization info_;
};

// Lazily built, shareable cache of VertexMapFold per space.
class GroupoidOracle {
 public:
  explicit GroupoidOracle(const System& s) : system_(&s), folds_(s.graph().spaces.size()) {}
  const VertexMapFold& fold(int space);
  std::optional<LocalPath> preimage(int space, const LocalPath& psi, int p, int q) {
    return fold(space).preimage(psi, p, q);
  }

 private:
  const System* system_;
  std::mutex mu_;
  std::vector<std::unique_ptr<VertexMapFold>> folds_;
};

ImmersionFactorization analyze_vertex_map(const System& s, int space);
std::optional<LocalPath> connecting_preimage(const System& s, int space, const LocalPath& psi,
                                             int p, int q);
bool is_surjective_on_pi1(const System& s);

// Membership of a reduced word in the subgroup generated by `generators`
// (words over labels where x ^ 1 is the inverse of x).
bool subgroup_contains(const std::vector<std::vector<int>>& generators, std::vector<int> word);

}  // namespace ttgos

#endif  // TTGOS_GROUPOID_HPP_
