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

#include "ttgos/gos.hpp"

#include <algorithm>
#include <cctype>

namespace ttgos {

std::string inverse_name(std::string_view name) {
  if (name.size() == 1 && std::isalpha(static_cast<unsigned char>(name[0]))) {
    const char c = name[0];
    return std::string(1, std::islower(static_cast<unsigned char>(c))
                              ? static_cast<char>(std::toupper(c))
                              : static_cast<char>(std::tolower(c)));
  }
  return std::string(name) + "~";
}

int VertexSpace::origin(LocalEdge s) const {
  const auto& spec = edges.at(static_cast<std::size_t>(s / 2));
  return (s & 1) ? spec.to : spec.from;
}

int VertexSpace::terminus(LocalEdge s) const {
  const auto& spec = edges.at(static_cast<std::size_t>(s / 2));
  return (s & 1) ? spec.from : spec.to;
}

std::string VertexSpace::edge_name(LocalEdge s) const {
  const auto& n = edges.at(static_cast<std::size_t>(s / 2)).name;
  return (s & 1) ? inverse_name(n) : n;
}

LocalPath LocalPath::reversed() const {
  LocalPath r{space, end, start, {}};
  r.steps.reserve(steps.size());
  for (auto it = steps.rbegin(); it != steps.rend(); ++it) r.steps.push_back(inverse(*it));
  return r;
}

LocalPath trivial_path(int space, int vertex) { return LocalPath{space, vertex, vertex, {}}; }

void reduce_in_place(LocalPath& p) {
  std::vector<LocalEdge> out;
  out.reserve(p.steps.size());
  for (LocalEdge s : p.steps) {
    if (!out.empty() && out.back() == inverse(s)) {
      out.pop_back();
    } else {
      out.push_back(s);
    }
  }
  p.steps = std::move(out);
}

LocalPath concat(const LocalPath& a, const LocalPath& b) {
  if (a.space != b.space || a.end != b.start) {
    fail(ErrorKind::kStructural, "local paths do not concatenate");
  }
  LocalPath r{a.space, a.start, b.end, a.steps};
  for (LocalEdge s : b.steps) {
    if (!r.steps.empty() && r.steps.back() == inverse(s)) {
      r.steps.pop_back();
    } else {
      r.steps.push_back(s);
    }
  }
  return r;
}

LocalPath concat(const LocalPath& a, const LocalPath& b, const LocalPath& c) {
  return concat(concat(a, b), c);
}

EdgePath reversed(const EdgePath& p) {
  EdgePath r;
  r.edges.reserve(p.edges.size());
  for (auto it = p.edges.rbegin(); it != p.edges.rend(); ++it) r.edges.push_back(inverse(*it));
  r.connectors.reserve(p.connectors.size());
  for (auto it = p.connectors.rbegin(); it != p.connectors.rend(); ++it) {
    r.connectors.push_back(it->reversed());
  }
  return r;
}

EdgePath single_edge(Edge e) { return EdgePath{{e}, {}}; }

EdgePath join(const EdgePath& a, const LocalPath& chi, const EdgePath& b) {
  if (a.empty()) return b;
  if (b.empty()) return a;
  EdgePath r = a;
  r.connectors.push_back(chi);
  r.edges.insert(r.edges.end(), b.edges.begin(), b.edges.end());
  r.connectors.insert(r.connectors.end(), b.connectors.begin(), b.connectors.end());
  return r;
}

EdgePath subpath(const EdgePath& p, std::size_t first, std::size_t count) {
  EdgePath r;
  if (count == 0) return r;
  r.edges.assign(p.edges.begin() + static_cast<long>(first),
                 p.edges.begin() + static_cast<long>(first + count));
  r.connectors.assign(p.connectors.begin() + static_cast<long>(first),
                      p.connectors.begin() + static_cast<long>(first + count - 1));
  return r;
}

bool has_prefix(const EdgePath& p, const EdgePath& prefix) {
  if (prefix.length() > p.length()) return false;
  for (std::size_t i = 0; i < prefix.length(); ++i) {
    if (p.edges[i] != prefix.edges[i]) return false;
    if (i + 1 < prefix.length() && p.connectors[i] != prefix.connectors[i]) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------

AttachPoint GraphOfSpaces::origin(Edge e) const {
  const auto& te = edges.at(static_cast<std::size_t>(e / 2));
  return (e & 1) ? te.to : te.from;
}

AttachPoint GraphOfSpaces::terminus(Edge e) const {
  const auto& te = edges.at(static_cast<std::size_t>(e / 2));
  return (e & 1) ? te.from : te.to;
}

std::string GraphOfSpaces::edge_name(Edge e) const {
  const auto& n = edges.at(static_cast<std::size_t>(e / 2)).name;
  return (e & 1) ? inverse_name(n) : n;
}

std::string GraphOfSpaces::point_name(AttachPoint p) const {
  const auto& sp = spaces.at(static_cast<std::size_t>(p.space));
  return sp.name + "." + sp.vertices.at(static_cast<std::size_t>(p.vertex));
}

std::optional<Edge> GraphOfSpaces::find_edge(std::string_view name) const {
  for (std::size_t k = 0; k < edges.size(); ++k) {
    if (edges[k].name == name) return static_cast<Edge>(2 * k);
  }
  for (std::size_t k = 0; k < edges.size(); ++k) {
    if (inverse_name(edges[k].name) == name) return static_cast<Edge>(2 * k + 1);
  }
  return std::nullopt;
}

std::optional<int> GraphOfSpaces::find_space(std::string_view name) const {
  for (std::size_t k = 0; k < spaces.size(); ++k) {
    if (spaces[k].name == name) return static_cast<int>(k);
  }
  return std::nullopt;
}

std::optional<int> GraphOfSpaces::find_vertex(int space, std::string_view name) const {
  const auto& vs = spaces.at(static_cast<std::size_t>(space)).vertices;
  for (std::size_t k = 0; k < vs.size(); ++k) {
    if (vs[k] == name) return static_cast<int>(k);
  }
  return std::nullopt;
}

std::optional<LocalEdge> GraphOfSpaces::find_local_edge(int space, std::string_view name) const {
  const auto& es = spaces.at(static_cast<std::size_t>(space)).edges;
  for (std::size_t k = 0; k < es.size(); ++k) {
    if (es[k].name == name) return static_cast<LocalEdge>(2 * k);
  }
  for (std::size_t k = 0; k < es.size(); ++k) {
    if (inverse_name(es[k].name) == name) return static_cast<LocalEdge>(2 * k + 1);
  }
  return std::nullopt;
}

void GraphOfSpaces::check(const LocalPath& p) const {
  if (p.space < 0 || p.space >= static_cast<int>(spaces.size())) {
    fail(ErrorKind::kStructural, "local path names an unknown vertex space");
  }
  const auto& sp = spaces[static_cast<std::size_t>(p.space)];
  const int nv = static_cast<int>(sp.vertices.size());
  if (p.start < 0 || p.start >= nv || p.end < 0 || p.end >= nv) {
    fail(ErrorKind::kStructural, "local path endpoint out of range in space " + sp.name);
  }
  int at = p.start;
  for (LocalEdge s : p.steps) {
    if (s < 0 || s >= sp.num_oriented_edges()) {
      fail(ErrorKind::kStructural, "unknown local edge in space " + sp.name);
    }
    if (sp.origin(s) != at) {
      fail(ErrorKind::kStructural, "local path steps do not concatenate in space " + sp.name);
    }
    at = sp.terminus(s);
  }
  if (at != p.end) fail(ErrorKind::kStructural, "local path ends at the wrong vertex in " + sp.name);
}

void GraphOfSpaces::check(const EdgePath& p) const {
  if (p.edges.empty()) fail(ErrorKind::kStructural, "edge path has no edges");
  if (p.connectors.size() + 1 != p.edges.size()) {
    fail(ErrorKind::kStructural, "edge path connector count mismatch");
  }
  for (Edge e : p.edges) {
    if (e < 0 || e >= num_oriented_edges()) fail(ErrorKind::kStructural, "unknown top edge");
  }
  for (std::size_t i = 0; i < p.connectors.size(); ++i) {
    const auto& c = p.connectors[i];
    check(c);
    const AttachPoint t = terminus(p.edges[i]);
    const AttachPoint o = origin(p.edges[i + 1]);
    if (c.space != t.space || c.start != t.vertex || c.space != o.space || c.end != o.vertex) {
      fail(ErrorKind::kStructural, "connector " + std::to_string(i) + " does not join " +
                                       edge_name(p.edges[i]) + " to " + edge_name(p.edges[i + 1]));
    }
  }
}

// ---------------------------------------------------------------------------
// Reduction

namespace {

struct LinearResult {
  std::vector<Edge> edges;
  std::vector<std::size_t> source_index;
  std::vector<LocalPath> below;  // below[k] = connector in front of edges[k]
  LocalPath tail;                // connector after the last surviving edge
};

// Stack reduction. `lead` is the local path in front of the first edge; the
// connector in front of a popped edge becomes pending again.
LinearResult reduce_linear(const GraphOfSpaces& g, const std::vector<Edge>& edges,
                           const std::vector<LocalPath>& connectors, LocalPath lead) {
  LinearResult r;
  LocalPath pend = std::move(lead);
  for (std::size_t i = 0; i < edges.size(); ++i) {
    const Edge e = edges[i];
    if (i > 0) pend = concat(pend, connectors[i - 1]);
    if (!r.edges.empty() && pend.trivial() && r.edges.back() == inverse(e)) {
      pend = std::move(r.below.back());
      r.edges.pop_back();
      r.below.pop_back();
      r.source_index.pop_back();
      continue;
    }
    const AttachPoint o = g.origin(e);
    if (pend.space != o.space || pend.end != o.vertex) {
      fail(ErrorKind::kStructural, "edge path does not concatenate at " + g.edge_name(e));
    }
    r.below.push_back(std::move(pend));
    r.edges.push_back(e);
    r.source_index.push_back(i);
    const AttachPoint t = g.terminus(e);
    pend = trivial_path(t.space, t.vertex);
  }
  r.tail = std::move(pend);
  return r;
}

LocalPath start_of(const GraphOfSpaces& g, Edge e) {
  const AttachPoint o = g.origin(e);
  return trivial_path(o.space, o.vertex);
}

void cyclic_reduce_local(LocalPath& p) {
  reduce_in_place(p);
  std::size_t lo = 0;
  std::size_t hi = p.steps.size();
  while (hi - lo >= 2 && p.steps[lo] == inverse(p.steps[hi - 1])) {
    ++lo;
    --hi;
  }
  if (lo > 0) {
    std::vector<LocalEdge> mid(p.steps.begin() + static_cast<long>(lo),
                               p.steps.begin() + static_cast<long>(hi));
    p.steps = std::move(mid);
  }
}

}  // namespace

ReducedPath reduce_path(const GraphOfSpaces& g, const EdgePath& p) {
  g.check(p);
  LinearResult r = reduce_linear(g, p.edges, p.connectors, start_of(g, p.edges.front()));
  if (r.edges.empty()) return ZeroPath{std::move(r.tail)};
  EdgePath out;
  out.edges = std::move(r.edges);
  out.connectors.assign(std::make_move_iterator(r.below.begin() + 1),
                        std::make_move_iterator(r.below.end()));
  return out;
}

std::variant<PartialPath, ZeroPath> reduce_path(const GraphOfSpaces& g, const PartialPath& p) {
  g.check(p.core);
  LinearResult r = reduce_linear(g, p.core.edges, p.core.connectors, start_of(g, p.core.edges.front()));
  if (r.edges.empty()) return ZeroPath{std::move(r.tail)};
  PartialPath out;
  const std::size_t last = p.core.length() - 1;
  out.head_trimmed = p.head_trimmed && r.source_index.front() == 0;
  if (out.head_trimmed) out.head_locus = p.head_locus;
  out.tail_trimmed = p.tail_trimmed && r.source_index.back() == last;
  if (out.tail_trimmed) out.tail_locus = p.tail_locus;
  out.core.edges = std::move(r.edges);
  out.core.connectors.assign(std::make_move_iterator(r.below.begin() + 1),
                             std::make_move_iterator(r.below.end()));
  return out;
}

ClosedPath reduce_path(const GraphOfSpaces& g, const ClosedPath& p) {
  if (p.edges.empty()) {
    ClosedPath out;
    out.vertex_loop = p.vertex_loop;
    g.check(out.vertex_loop);
    cyclic_reduce_local(out.vertex_loop);
    if (!out.vertex_loop.steps.empty()) {
      const auto& sp = g.spaces[static_cast<std::size_t>(out.vertex_loop.space)];
      out.vertex_loop.start = out.vertex_loop.end = sp.origin(out.vertex_loop.steps.front());
    }
    return out;
  }
  if (p.connectors.size() != p.edges.size()) {
    fail(ErrorKind::kStructural, "closed path connector count mismatch");
  }
  std::vector<LocalPath> inner(p.connectors.begin(), p.connectors.end() - 1);
  LinearResult r = reduce_linear(g, p.edges, inner, start_of(g, p.edges.front()));
  if (r.edges.empty()) {
    ClosedPath out;
    out.vertex_loop = concat(r.tail, p.connectors.back());
    return reduce_path(g, out);
  }
  // closing connector runs from the last surviving edge round to the first.
  LocalPath closing = concat(r.tail, p.connectors.back(), r.below.front());
  std::vector<Edge> es = std::move(r.edges);
  std::vector<LocalPath> cs(std::make_move_iterator(r.below.begin() + 1),
                            std::make_move_iterator(r.below.end()));
  cs.push_back(std::move(closing));
  while (es.size() >= 2 && cs.back().trivial() && es.back() == inverse(es.front())) {
    if (es.size() == 2) {
      ClosedPath out;
      out.vertex_loop = cs.front();
      return reduce_path(g, out);
    }
    LocalPath merged = concat(cs[cs.size() - 2], cs.front());
    es.pop_back();
    es.erase(es.begin());
    cs.pop_back();
    cs.erase(cs.begin());
    cs.back() = std::move(merged);
  }
  ClosedPath out;
  out.edges = std::move(es);
  out.connectors = std::move(cs);
  return out;
}

namespace {

ClosedPath rotate(const ClosedPath& p, std::size_t k) {
  ClosedPath r;
  const std::size_t q = p.edges.size();
  for (std::size_t i = 0; i < q; ++i) {
    r.edges.push_back(p.edges[(i + k) % q]);
    r.connectors.push_back(p.connectors[(i + k) % q]);
  }
  return r;
}

bool rotation_less(const ClosedPath& p, std::size_t a, std::size_t b) {
  const std::size_t q = p.edges.size();
  for (std::size_t i = 0; i < q; ++i) {
    const std::size_t x = (a + i) % q;
    const std::size_t y = (b + i) % q;
    if (p.edges[x] != p.edges[y]) return p.edges[x] < p.edges[y];
    if (p.connectors[x] != p.connectors[y]) return p.connectors[x] < p.connectors[y];
  }
  return false;
}

LocalPath canonical_local_rotation(const GraphOfSpaces& g, const LocalPath& p) {
  if (p.steps.size() < 2) return p;
  const std::size_t n = p.steps.size();
  std::size_t best = 0;
  for (std::size_t k = 1; k < n; ++k) {
    for (std::size_t i = 0; i < n; ++i) {
      const LocalEdge x = p.steps[(k + i) % n];
      const LocalEdge y = p.steps[(best + i) % n];
      if (x != y) {
        if (x < y) best = k;
        break;
      }
    }
  }
  LocalPath r = p;
  std::rotate(r.steps.begin(), r.steps.begin() + static_cast<long>(best), r.steps.end());
  r.start = r.end = g.spaces[static_cast<std::size_t>(p.space)].origin(r.steps.front());
  return r;
}

}  // namespace

ClosedPath canonical_rotation(const GraphOfSpaces& g, const ClosedPath& p) {
  if (p.edges.empty()) {
    ClosedPath r;
    r.vertex_loop = canonical_local_rotation(g, p.vertex_loop);
    return r;
  }
  std::size_t best = 0;
  for (std::size_t k = 1; k < p.edges.size(); ++k) {
    if (rotation_less(p, k, best)) best = k;
  }
  return rotate(p, best);
}

bool cyclic_equal(const ClosedPath& a, const ClosedPath& b) {
  if (a.edges.size() != b.edges.size()) return false;
  if (a.edges.empty()) {
    if (a.vertex_loop.space != b.vertex_loop.space) return false;
    if (a.vertex_loop.steps.size() != b.vertex_loop.steps.size()) return false;
    const std::size_t n = a.vertex_loop.steps.size();
    if (n == 0) return true;
    for (std::size_t k = 0; k < n; ++k) {
      bool same = true;
      for (std::size_t i = 0; i < n && same; ++i) {
        same = a.vertex_loop.steps[i] == b.vertex_loop.steps[(i + k) % n];
      }
      if (same) return true;
    }
    return false;
  }
  std::size_t ka = 0;
  std::size_t kb = 0;
  for (std::size_t k = 1; k < a.edges.size(); ++k) {
    if (rotation_less(a, k, ka)) ka = k;
    if (rotation_less(b, k, kb)) kb = k;
  }
  const ClosedPath x = rotate(a, ka);
  const ClosedPath y = rotate(b, kb);
  return x.edges == y.edges && x.connectors == y.connectors;
}

ClosedPath close_path(const GraphOfSpaces& g, const EdgePath& p) {
  g.check(p);
  const AttachPoint t = g.terminus(p.edges.back());
  if (t != g.origin(p.edges.front())) {
    fail(ErrorKind::kStructural, "path is not closed");
  }
  ClosedPath c;
  c.edges = p.edges;
  c.connectors = p.connectors;
  c.connectors.push_back(trivial_path(t.space, t.vertex));
  return c;
}

EdgePath vertex_prolongation(const PartialPath& p) {
  if (p.core.empty()) fail(ErrorKind::kDomain, "zero path has no vertex-prolongation");
  return p.core;
}

}  // namespace ttgos
