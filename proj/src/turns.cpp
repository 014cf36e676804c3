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

#include "ttgos/turns.hpp"

#include <queue>

namespace ttgos {

Turn reverse(const Turn& t) { return Turn{inverse(t.out), t.connector.reversed(), inverse(t.in)}; }

Turn canonical(const Turn& t) {
  Turn r = reverse(t);
  return r < t ? r : t;
}

Turn make_turn(Edge in, LocalPath connector, Edge out) {
  return canonical(Turn{in, std::move(connector), out});
}

bool degenerate(const Turn& t) { return t.out == inverse(t.in) && t.connector.trivial(); }

Turn turn_at(const EdgePath& p, std::size_t i) {
  return make_turn(p.edges[i], p.connectors[i], p.edges[i + 1]);
}

std::string to_string(const GraphOfSpaces& g, const Turn& t) {
  std::string c;
  const auto& sp = g.spaces[static_cast<std::size_t>(t.connector.space)];
  for (std::size_t i = 0; i < t.connector.steps.size(); ++i) {
    if (i > 0) c += " ";
    c += sp.edge_name(t.connector.steps[i]);
  }
  return "(" + g.edge_name(t.in) + " | {" + c + "} | " + g.edge_name(t.out) + ")";
}

Turn image_turn(const System& s, const Turn& t) {
  const EdgeImage& a = s.image(t.in);
  const EdgeImage& b = s.image(t.out);
  return make_turn(a.path.edges.back(), concat(a.trail, s.map_local(t.connector), b.lead),
                   b.path.edges.front());
}

std::vector<Turn> preimage_turns(const System& s, GroupoidOracle& oracle, const Turn& t) {
  const auto& g = s.graph();
  std::set<Turn> out;
  for (const Turn& o : {t, reverse(t)}) {
    for (Edge e = 0; e < g.num_oriented_edges(); ++e) {
      const EdgeImage& ie = s.image(e);
      if (ie.path.edges.back() != o.in) continue;
      const AttachPoint at = g.terminus(e);
      if (s.space_image(at.space) != o.connector.space) continue;
      for (Edge e2 = 0; e2 < g.num_oriented_edges(); ++e2) {
        const EdgeImage& ie2 = s.image(e2);
        if (ie2.path.edges.front() != o.out) continue;
        const AttachPoint from = g.origin(e2);
        if (from.space != at.space) continue;
        const LocalPath psi = concat(ie.trail.reversed(), o.connector, ie2.lead.reversed());
        auto chi = oracle.preimage(at.space, psi, at.vertex, from.vertex);
        if (chi) out.insert(make_turn(e, std::move(*chi), e2));
      }
    }
  }
  return {out.begin(), out.end()};
}

int TurnClosure::num_nondegenerate() const {
  int n = 0;
  for (const auto& [t, time] : illegal) n += time > 0 ? 1 : 0;
  return n;
}

int TurnClosure::ilt(const EdgePath& p) const {
  int n = 0;
  for (std::size_t i = 0; i + 1 < p.edges.size(); ++i) n += is_illegal(turn_at(p, i)) ? 1 : 0;
  return n;
}

int TurnClosure::ilt(const ClosedPath& p) const {
  int n = 0;
  const std::size_t q = p.edges.size();
  for (std::size_t i = 0; i < q; ++i) {
    n += is_illegal(Turn{p.edges[i], p.connectors[i], p.edges[(i + 1) % q]}) ? 1 : 0;
  }
  return n;
}

TurnClosure illegal_turn_closure(const System& s, GroupoidOracle& oracle, std::size_t max_turns) {
  const auto& g = s.graph();
  TurnClosure c;
  std::vector<Turn> frontier;
  for (Edge e = 0; e < g.num_oriented_edges(); ++e) {
    const AttachPoint at = g.terminus(e);
    Turn t = make_turn(e, trivial_path(at.space, at.vertex), inverse(e));
    if (c.illegal.emplace(t, 0).second) frontier.push_back(std::move(t));
  }
  int level = 0;
  while (!frontier.empty()) {
    ++level;
    std::vector<Turn> next;
    for (const Turn& t : frontier) {
      for (Turn& p : preimage_turns(s, oracle, t)) {
        if (c.illegal.emplace(p, level).second) next.push_back(std::move(p));
      }
    }
    if (c.illegal.size() > max_turns) {
      fail(ErrorKind::kCapacity, "illegal-turn closure exceeded max_turns=" + std::to_string(max_turns));
    }
    if (!next.empty()) c.t0 = level;
    frontier = std::move(next);
  }
  return c;
}

namespace {

// Reduced path between two vertices of a tree-shaped vertex space.
LocalPath tree_path(const VertexSpace& sp, int space, int a, int b) {
  std::vector<int> via(sp.vertices.size(), -1);
  std::vector<bool> seen(sp.vertices.size(), false);
  std::queue<int> q;
  q.push(a);
  seen[static_cast<std::size_t>(a)] = true;
  while (!q.empty()) {
    const int v = q.front();
    q.pop();
    for (LocalEdge st = 0; st < sp.num_oriented_edges(); ++st) {
      if (sp.origin(st) != v) continue;
      const int w = sp.terminus(st);
      if (seen[static_cast<std::size_t>(w)]) continue;
      seen[static_cast<std::size_t>(w)] = true;
      via[static_cast<std::size_t>(w)] = st;
      q.push(w);
    }
  }
  LocalPath p = trivial_path(space, a);
  p.end = b;
  for (int v = b; v != a;) {
    const LocalEdge st = via[static_cast<std::size_t>(v)];
    p.steps.insert(p.steps.begin(), st);
    v = sp.origin(st);
  }
  return p;
}

void add_internal_turns(const EdgePath& p, std::set<Turn>& out) {
  for (std::size_t i = 0; i + 1 < p.edges.size(); ++i) out.insert(turn_at(p, i));
}

}  // namespace

std::set<Turn> special_turns(const System& s, int t) {
  if (t < 1) fail(ErrorKind::kDomain, "special_turns needs t >= 1");
  const auto& g = s.graph();
  const int n = g.num_oriented_edges();
  std::set<Turn> used;
  std::vector<bool> reach(static_cast<std::size_t>(n), true);
  for (int level = 1; level <= t; ++level) {
    std::set<Turn> next;
    for (const Turn& u : used) next.insert(image_turn(s, u));
    std::vector<bool> reach_next(static_cast<std::size_t>(n), false);
    for (Edge e = 0; e < n; ++e) {
      if (!reach[static_cast<std::size_t>(e)]) continue;
      const EdgePath& img = s.image(e).path;
      add_internal_turns(img, next);
      for (Edge x : img.edges) {
        reach_next[static_cast<std::size_t>(x)] = true;
        reach_next[static_cast<std::size_t>(inverse(x))] = true;
      }
    }
    used = std::move(next);
    reach = std::move(reach_next);
  }
  for (std::size_t v = 0; v < g.spaces.size(); ++v) {
    const auto& sp = g.spaces[v];
    if (sp.essential()) continue;
    for (Edge e1 = 0; e1 < n; ++e1) {
      const AttachPoint a = g.terminus(e1);
      if (a.space != static_cast<int>(v)) continue;
      for (Edge e2 = 0; e2 < n; ++e2) {
        const AttachPoint b = g.origin(e2);
        if (b.space != static_cast<int>(v)) continue;
        Turn u = make_turn(e1, tree_path(sp, static_cast<int>(v), a.vertex, b.vertex), e2);
        if (degenerate(u)) continue;
        for (int k = 0; k < t; ++k) u = image_turn(s, u);
        used.insert(u);
      }
    }
  }
  return used;
}

std::set<Turn> allowed_turns(const System& s, GroupoidOracle& oracle, const TurnClosure& c, int t) {
  std::set<Turn> cur;
  for (const Turn& u : special_turns(s, t)) {
    if (!c.is_illegal(u)) cur.insert(u);
  }
  for (int k = 0; k < t; ++k) {
    std::set<Turn> next;
    for (const Turn& u : cur) {
      for (Turn& p : preimage_turns(s, oracle, u)) next.insert(std::move(p));
    }
    cur = std::move(next);
  }
  return cur;
}

MapProfile map_profile(const System& s, const TurnClosure& c) {
  const auto& g = s.graph();
  MapProfile prof;
  prof.train_track = true;
  for (std::size_t k = 0; k < g.edges.size(); ++k) {
    if (!c.legal(s.image(static_cast<Edge>(2 * k)).path)) {
      prof.train_track = false;
      prof.illegal_images.push_back(g.edges[k].name);
    }
  }
  // |f^t| never decreases, so an edge expands iff its chain of length-one
  // images reaches an edge with a longer image.
  prof.expanding = true;
  int worst = 1;
  for (std::size_t k = 0; k < g.edges.size(); ++k) {
    Edge e = static_cast<Edge>(2 * k);
    int steps = 1;
    std::set<int> visited;
    while (s.image(e).path.length() == 1) {
      if (!visited.insert(e / 2).second) {
        prof.expanding = false;
        prof.stuck_edges.push_back(g.edges[k].name);
        break;
      }
      e = s.image(e).path.edges.front();
      ++steps;
    }
    worst = std::max(worst, steps);
  }
  prof.t_exp = prof.expanding ? worst : 0;
  return prof;
}

}  // namespace ttgos
