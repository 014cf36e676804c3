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

// Graphs-of-spaces whose vertex spaces are finite graphs, their edge paths,
// path reduction and the action of a graph-of-spaces morphism on paths.
//
// Oriented edges (top edges as well as local edges inside a vertex space) are
// encoded as 2k for the k-th edge and 2k+1 for its reverse, so that
// inverse(e) == e ^ 1.

#ifndef TTGOS_GOS_HPP_
#define TTGOS_GOS_HPP_

#include <compare>
#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "ttgos/error.hpp"

namespace ttgos {

using Edge = int;
using LocalEdge = int;

constexpr int inverse(int e) noexcept { return e ^ 1; }

// Inverse naming convention: single letters swap case, anything else gets a
// trailing '~'.
std::string inverse_name(std::string_view name);

struct LocalEdgeSpec {
  std::string name;
  int from = 0;
  int to = 0;
};

struct VertexSpace {
  std::string name;
  std::vector<std::string> vertices;
  std::vector<LocalEdgeSpec> edges;  // positive orientation only

  int num_oriented_edges() const { return 2 * static_cast<int>(edges.size()); }
  int origin(LocalEdge s) const;
  int terminus(LocalEdge s) const;
  std::string edge_name(LocalEdge s) const;
  // First Betti number of the (connected) local graph.
  long betti() const {
    return static_cast<long>(edges.size()) - static_cast<long>(vertices.size()) + 1;
  }
  bool essential() const { return betti() >= 1; }
};

struct AttachPoint {
  int space = 0;
  int vertex = 0;
  auto operator<=>(const AttachPoint&) const = default;
};

struct TopEdge {
  std::string name;
  AttachPoint from;
  AttachPoint to;
};

// A local edge path inside one vertex space. Reduced paths are the canonical
// representatives of homotopy classes rel endpoints.
struct LocalPath {
  int space = 0;
  int start = 0;
  int end = 0;
  std::vector<LocalEdge> steps;

  bool trivial() const { return steps.empty(); }
  LocalPath reversed() const;
  auto operator<=>(const LocalPath&) const = default;
};

LocalPath trivial_path(int space, int vertex);
// Free reduction (cancels s followed by inverse(s)).
void reduce_in_place(LocalPath& p);
// Concatenation followed by free reduction. Throws kStructural on an
// endpoint mismatch.
LocalPath concat(const LocalPath& a, const LocalPath& b);
LocalPath concat(const LocalPath& a, const LocalPath& b, const LocalPath& c);

// e_1 chi_1 e_2 ... chi_{r-1} e_r; connectors[i] joins edges[i] to edges[i+1].
struct EdgePath {
  std::vector<Edge> edges;
  std::vector<LocalPath> connectors;

  std::size_t length() const { return edges.size(); }
  bool empty() const { return edges.empty(); }
  auto operator<=>(const EdgePath&) const = default;
};

EdgePath reversed(const EdgePath& p);
EdgePath single_edge(Edge e);
// a * chi * b
EdgePath join(const EdgePath& a, const LocalPath& chi, const EdgePath& b);
// Sub-path made of edges [first, first + count).
EdgePath subpath(const EdgePath& p, std::size_t first, std::size_t count);
// True iff `prefix` is an initial sub-edge-path of `p` (connectors included).
bool has_prefix(const EdgePath& p, const EdgePath& prefix);

// Outcome of reducing a path that backtracks completely.
struct ZeroPath {
  LocalPath residual;
  auto operator<=>(const ZeroPath&) const = default;
};

// Closed path concatenation e_1 chi_1 ... e_q chi_q; connectors[i] joins
// edges[i] to edges[(i + 1) % q]. With no top edges the loop lives in a vertex
// space and is held by vertex_loop.
struct ClosedPath {
  std::vector<Edge> edges;
  std::vector<LocalPath> connectors;
  LocalPath vertex_loop;

  bool in_vertex_space() const { return edges.empty(); }
};

// Symbolic position of an endpoint strictly inside an edge: the fixed point of
// f^power lying in the given occurrence (0-based) of `edge` in f^power(edge).
struct Locus {
  Edge edge = 0;
  std::uint64_t occurrence = 0;
  int power = 1;
  auto operator<=>(const Locus&) const = default;
};

// A non-zero path stored through its canonical vertex-prolongation.
struct PartialPath {
  EdgePath core;
  bool head_trimmed = false;
  bool tail_trimmed = false;
  std::optional<Locus> head_locus;
  std::optional<Locus> tail_locus;
};

class GraphOfSpaces {
 public:
  std::vector<VertexSpace> spaces;
  std::vector<TopEdge> edges;

  int num_oriented_edges() const { return 2 * static_cast<int>(edges.size()); }
  AttachPoint origin(Edge e) const;
  AttachPoint terminus(Edge e) const;
  std::string edge_name(Edge e) const;
  std::string point_name(AttachPoint p) const;

  std::optional<Edge> find_edge(std::string_view name) const;
  std::optional<int> find_space(std::string_view name) const;
  std::optional<int> find_vertex(int space, std::string_view name) const;
  std::optional<LocalEdge> find_local_edge(int space, std::string_view name) const;

  // Throws kStructural unless `p` is a well-formed local path.
  void check(const LocalPath& p) const;
  // Throws kStructural unless `p` is a well-formed edge path.
  void check(const EdgePath& p) const;
};

struct VertexMap {
  int target = 0;
  std::vector<int> vertex_image;       // per local vertex
  std::vector<LocalPath> edge_image;   // per positive local edge
};

// f(e) as the edge path `path` together with the local paths that join the
// image of the attaching points to the ends of `path` (trivial in the common
// case where f(e) starts exactly at the image of the attaching point).
struct EdgeImage {
  LocalPath lead;
  EdgePath path;
  LocalPath trail;
};

struct GosMorphism {
  std::vector<VertexMap> vertex_maps;  // per vertex space
  std::vector<EdgeImage> edge_images;  // per positive top edge
};

// A graph-of-spaces together with a self-morphism; the central handle of the
// library. Immutable after construction.
class System {
 public:
  System(GraphOfSpaces graph, GosMorphism map);

  const GraphOfSpaces& graph() const { return graph_; }
  const GosMorphism& morphism() const { return map_; }

  // Oriented image; the reverse of a top edge maps to the reversed image.
  const EdgeImage& image(Edge e) const { return oriented_[static_cast<std::size_t>(e)]; }
  int space_image(int space) const { return map_.vertex_maps[space].target; }
  AttachPoint map_point(AttachPoint p) const;
  // Reduced image of a local path under f, resp. f^power.
  LocalPath map_local(const LocalPath& p) const;
  LocalPath map_local(const LocalPath& p, int power) const;

  std::string name(Edge e) const { return graph_.edge_name(e); }
  int num_oriented_edges() const { return graph_.num_oriented_edges(); }
  // True iff every vertex space is a single point.
  bool is_absolute() const;

 private:
  GraphOfSpaces graph_;
  GosMorphism map_;
  std::vector<EdgeImage> oriented_;
};

// ---------------------------------------------------------------------------
// Reduction

using ReducedPath = std::variant<EdgePath, ZeroPath>;

ReducedPath reduce_path(const GraphOfSpaces& g, const EdgePath& p);
// Reduces the core; trim flags survive only on extremal edges that survive.
std::variant<PartialPath, ZeroPath> reduce_path(const GraphOfSpaces& g, const PartialPath& p);
// Cyclic reduction. Vertex-space loops are cyclically reduced as local loops.
ClosedPath reduce_path(const GraphOfSpaces& g, const ClosedPath& p);
// Equality of loops up to cyclic permutation (inputs must be cyclically reduced).
bool cyclic_equal(const ClosedPath& a, const ClosedPath& b);
// Rotation applied so that the loop starts at its lexicographically least
// position; used for canonical output.
ClosedPath canonical_rotation(const GraphOfSpaces& g, const ClosedPath& p);
ClosedPath close_path(const GraphOfSpaces& g, const EdgePath& p);

EdgePath vertex_prolongation(const PartialPath& p);

// ---------------------------------------------------------------------------
// Morphism action

// Unreduced image: f(e_1) [f(chi_1)] f(e_2) ... with connectors reduced.
EdgePath map_path(const System& s, const EdgePath& p);
// f applied to a closed path (unreduced), connectors reduced.
ClosedPath map_path(const System& s, const ClosedPath& p);

// Memoized f^t(e). Safe for concurrent use; a value is computed at most once
// per key under the lock, so concurrent fills agree.
class ImageCache {
 public:
  explicit ImageCache(const System& s, std::uint64_t max_length = 5'000'000)
      : system_(&s), max_length_(max_length) {}
  const EdgePath& iterate(Edge e, int t);
  std::uint64_t max_length() const { return max_length_; }

 private:
  const System* system_;
  std::uint64_t max_length_;
  std::mutex mu_;
  std::map<std::pair<Edge, int>, std::unique_ptr<EdgePath>> cache_;
};

// ---------------------------------------------------------------------------
// Text form. Tokens are whitespace separated: an oriented top-edge name or a
// connector `{space: x Y}` / `{x Y}`; trivial connectors may be omitted.

std::string to_string(const GraphOfSpaces& g, const LocalPath& p, bool with_space = false);
std::string to_string(const GraphOfSpaces& g, const EdgePath& p);
std::string to_string(const GraphOfSpaces& g, const ClosedPath& p);
std::string to_string(const GraphOfSpaces& g, const EdgeImage& p);

EdgePath parse_edge_path(const GraphOfSpaces& g, std::string_view text);
ClosedPath parse_closed_path(const GraphOfSpaces& g, std::string_view text);
// Like parse_edge_path but accepts leading/trailing connectors. The lead
// starts at `from` and the trail ends at `to`.
EdgeImage parse_edge_image(const GraphOfSpaces& g, std::string_view text,
                           AttachPoint from, AttachPoint to);
LocalPath parse_local_path(const GraphOfSpaces& g, int space, int start,
                           std::string_view text);

// ---------------------------------------------------------------------------
// Validation

struct ValidationReport {
  std::vector<std::string> violations;
  bool surjective_checked = false;
  bool ok() const { return violations.empty(); }
};

// Type invariants, the essential-space permutation condition and
// pi_1-injectivity of each vertex map. Never throws on bad data.
ValidationReport validate_system(const System& s);

}  // namespace ttgos

#endif  // TTGOS_GOS_HPP_
