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

#include "ttgos/absolute.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <numeric>
#include <set>

#include "ttgos/turns.hpp"

namespace ttgos {

namespace {

using BoolMatrix = std::vector<std::vector<bool>>;

BoolMatrix multiply(const BoolMatrix& a, const BoolMatrix& b) {
  const std::size_t n = a.size();
  BoolMatrix c(n, std::vector<bool>(n, false));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t k = 0; k < n; ++k) {
      if (!a[i][k]) continue;
      for (std::size_t j = 0; j < n; ++j) {
        if (b[k][j]) c[i][j] = true;
      }
    }
  }
  return c;
}

bool positive(const BoolMatrix& m) {
  return std::all_of(m.begin(), m.end(), [](const auto& row) {
    return std::all_of(row.begin(), row.end(), [](bool x) { return x; });
  });
}

// Tarjan's algorithm on j -> i whenever matrix[i][j] > 0.
int components(const std::vector<std::vector<std::uint64_t>>& m, std::vector<int>& comp) {
  const int n = static_cast<int>(m.size());
  comp.assign(static_cast<std::size_t>(n), -1);
  std::vector<int> index(static_cast<std::size_t>(n), -1), low(static_cast<std::size_t>(n), 0);
  std::vector<bool> on(static_cast<std::size_t>(n), false);
  std::vector<int> stack;
  int counter = 0;
  int count = 0;
  std::function<void(int)> visit = [&](int v) {
    const auto sv = static_cast<std::size_t>(v);
    index[sv] = low[sv] = counter++;
    stack.push_back(v);
    on[sv] = true;
    for (int w = 0; w < n; ++w) {
      const auto sw = static_cast<std::size_t>(w);
      if (m[sw][sv] == 0) continue;
      if (index[sw] < 0) {
        visit(w);
        low[sv] = std::min(low[sv], low[sw]);
      } else if (on[sw]) {
        low[sv] = std::min(low[sv], index[sw]);
      }
    }
    if (low[sv] == index[sv]) {
      for (;;) {
        const int w = stack.back();
        stack.pop_back();
        on[static_cast<std::size_t>(w)] = false;
        comp[static_cast<std::size_t>(w)] = count;
        if (w == v) break;
      }
      ++count;
    }
  };
  for (int v = 0; v < n; ++v) {
    if (index[static_cast<std::size_t>(v)] < 0) visit(v);
  }
  return count;
}

}  // namespace

TransitionAnalysis transition_analysis(const System& s) {
  if (!s.is_absolute()) fail(ErrorKind::kDomain, "transition analysis needs point vertex spaces");
  const std::size_t n = s.graph().edges.size();
  TransitionAnalysis r;
  r.matrix.assign(n, std::vector<std::uint64_t>(n, 0));
  for (std::size_t j = 0; j < n; ++j) {
    for (Edge x : s.image(static_cast<Edge>(2 * j)).path.edges) ++r.matrix[static_cast<std::size_t>(x >> 1)][j];
  }

  BoolMatrix m(n, std::vector<bool>(n, false));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) m[i][j] = r.matrix[i][j] > 0;
  }
  if (n > 0) {
    const int bound = static_cast<int>((n - 1) * (n - 1) + 1);
    BoolMatrix p = m;
    for (int k = 1; k <= bound; ++k) {
      if (positive(p)) {
        r.primitive = true;
        r.witness = k;
        break;
      }
      p = multiply(p, m);
    }
  }

  r.num_scc = components(r.matrix, r.scc);
  // A component is tame when its submatrix is a permutation matrix or it is a
  // single edge without a loop.
  std::vector<bool> tame(static_cast<std::size_t>(r.num_scc), true);
  for (int c = 0; c < r.num_scc; ++c) {
    std::vector<std::size_t> members;
    for (std::size_t i = 0; i < n; ++i) {
      if (r.scc[i] == c) members.push_back(i);
    }
    const bool single_no_loop = members.size() == 1 && r.matrix[members[0]][members[0]] == 0;
    if (single_no_loop) continue;
    for (std::size_t i : members) {
      std::uint64_t row = 0;
      std::uint64_t col = 0;
      for (std::size_t j : members) {
        row += r.matrix[i][j];
        col += r.matrix[j][i];
      }
      if (row != 1 || col != 1) tame[static_cast<std::size_t>(c)] = false;
    }
  }
  // Exponential iff some component reachable from the edge is not tame.
  r.exponential.assign(n, false);
  for (std::size_t e = 0; e < n; ++e) {
    std::vector<bool> seen(n, false);
    std::deque<std::size_t> queue{e};
    seen[e] = true;
    while (!queue.empty()) {
      const std::size_t v = queue.front();
      queue.pop_front();
      if (!tame[static_cast<std::size_t>(r.scc[v])]) {
        r.exponential[e] = true;
        break;
      }
      for (std::size_t w = 0; w < n; ++w) {
        if (r.matrix[w][v] > 0 && !seen[w]) {
          seen[w] = true;
          queue.push_back(w);
        }
      }
    }
  }
  return r;
}

System to_graph_of_spaces(const System& s) {
  const TransitionAnalysis ta = transition_analysis(s);
  const GraphOfSpaces& g = s.graph();
  const std::size_t n = g.edges.size();
  if (std::none_of(ta.exponential.begin(), ta.exponential.end(), [](bool b) { return b; })) {
    fail(ErrorKind::kDomain, "no exponentially growing edge; the graph-of-spaces would have no top edges");
  }
  // Components of the polynomial subgraph.
  const std::size_t np = g.spaces.size();
  std::vector<std::size_t> parent(np);
  std::iota(parent.begin(), parent.end(), 0);
  std::function<std::size_t(std::size_t)> find = [&](std::size_t x) {
    return parent[x] == x ? x : parent[x] = find(parent[x]);
  };
  for (std::size_t e = 0; e < n; ++e) {
    if (ta.exponential[e]) continue;
    parent[find(static_cast<std::size_t>(g.edges[e].from.space))] = find(static_cast<std::size_t>(g.edges[e].to.space));
  }
  std::vector<int> space_of(np, -1);
  std::vector<int> vertex_of(np, -1);
  GraphOfSpaces out;
  for (std::size_t v = 0; v < np; ++v) {
    const std::size_t root = find(v);
    if (space_of[root] < 0) {
      space_of[root] = static_cast<int>(out.spaces.size());
      out.spaces.push_back(VertexSpace{g.spaces[v].name, {}, {}});
    }
    space_of[v] = space_of[root];
    auto& sp = out.spaces[static_cast<std::size_t>(space_of[v])];
    vertex_of[v] = static_cast<int>(sp.vertices.size());
    sp.vertices.push_back(g.spaces[v].name);
  }
  // Local edge id per polynomial edge, top edge id per exponential edge.
  std::vector<int> local_id(n, -1);
  std::vector<int> top_id(n, -1);
  for (std::size_t e = 0; e < n; ++e) {
    const auto a = static_cast<std::size_t>(g.edges[e].from.space);
    const auto b = static_cast<std::size_t>(g.edges[e].to.space);
    if (ta.exponential[e]) {
      top_id[e] = static_cast<int>(out.edges.size());
      out.edges.push_back(TopEdge{g.edges[e].name, {space_of[a], vertex_of[a]}, {space_of[b], vertex_of[b]}});
    } else {
      auto& sp = out.spaces[static_cast<std::size_t>(space_of[a])];
      local_id[e] = static_cast<int>(sp.edges.size());
      sp.edges.push_back(LocalEdgeSpec{g.edges[e].name, vertex_of[a], vertex_of[b]});
    }
  }
  auto point = [&](AttachPoint p) { return std::make_pair(space_of[static_cast<std::size_t>(p.space)],
                                                          vertex_of[static_cast<std::size_t>(p.space)]); };
  auto local_step = [&](Edge x) { return 2 * local_id[static_cast<std::size_t>(x >> 1)] + (x & 1); };

  GosMorphism m;
  for (std::size_t c = 0; c < out.spaces.size(); ++c) m.vertex_maps.push_back(VertexMap{});
  std::vector<bool> target_set(out.spaces.size(), false);
  for (std::size_t v = 0; v < np; ++v) {
    auto [sc, vc] = point({static_cast<int>(v), 0});
    auto [tc, tv] = point(s.map_point({static_cast<int>(v), 0}));
    VertexMap& vm = m.vertex_maps[static_cast<std::size_t>(sc)];
    if (target_set[static_cast<std::size_t>(sc)] && vm.target != tc) {
      fail(ErrorKind::kInternal, "polynomial component does not map into one component");
    }
    target_set[static_cast<std::size_t>(sc)] = true;
    vm.target = tc;
    if (vm.vertex_image.size() <= static_cast<std::size_t>(vc)) vm.vertex_image.resize(static_cast<std::size_t>(vc) + 1);
    vm.vertex_image[static_cast<std::size_t>(vc)] = tv;
  }
  for (std::size_t e = 0; e < n; ++e) {
    if (ta.exponential[e]) continue;
    const auto a = point(g.edges[e].from);
    const auto b = point(g.edges[e].to);
    VertexMap& vm = m.vertex_maps[static_cast<std::size_t>(a.first)];
    LocalPath lp;
    lp.space = vm.target;
    lp.start = vm.vertex_image[static_cast<std::size_t>(a.second)];
    lp.end = m.vertex_maps[static_cast<std::size_t>(b.first)].vertex_image[static_cast<std::size_t>(b.second)];
    for (Edge x : s.image(static_cast<Edge>(2 * e)).path.edges) {
      if (ta.exponential[static_cast<std::size_t>(x >> 1)]) {
        fail(ErrorKind::kInternal, "polynomial edge maps across an exponential edge");
      }
      lp.steps.push_back(local_step(x));
    }
    reduce_in_place(lp);
    vm.edge_image.resize(out.spaces[static_cast<std::size_t>(a.first)].edges.size());
    vm.edge_image[static_cast<std::size_t>(local_id[e])] = lp;
  }
  for (std::size_t e = 0; e < n; ++e) {
    if (!ta.exponential[e]) continue;
    const EdgePath& img = s.image(static_cast<Edge>(2 * e)).path;
    EdgeImage ei;
    // Runs of polynomial edges become local connectors.
    auto start_run = [&](AttachPoint at) {
      auto [sc, vc] = point(at);
      return trivial_path(sc, vc);
    };
    LocalPath run = start_run(g.origin(img.edges.front()));
    bool have_top = false;
    for (Edge x : img.edges) {
      const auto ux = static_cast<std::size_t>(x >> 1);
      if (!ta.exponential[ux]) {
        run.steps.push_back(local_step(x));
        run.end = point(g.terminus(x)).second;
        continue;
      }
      reduce_in_place(run);
      if (!have_top) {
        ei.lead = run;
        have_top = true;
      } else {
        ei.path.connectors.push_back(run);
      }
      ei.path.edges.push_back(2 * top_id[ux] + (x & 1));
      run = start_run(g.terminus(x));
    }
    reduce_in_place(run);
    ei.trail = run;
    m.edge_images.push_back(std::move(ei));
  }
  return System(std::move(out), std::move(m));
}

std::vector<WhiteheadGraph> whitehead_graphs(const System& s) {
  const GraphOfSpaces& g = s.graph();
  std::set<Turn> turns;
  std::deque<Turn> queue;
  auto offer = [&](const Turn& t) {
    if (degenerate(t)) return;
    const Turn c = canonical(t);
    if (turns.insert(c).second) queue.push_back(c);
  };
  for (Edge e = 0; e < g.num_oriented_edges(); e += 2) {
    const EdgePath& p = s.image(e).path;
    for (std::size_t i = 0; i + 1 < p.length(); ++i) offer(turn_at(p, i));
  }
  while (!queue.empty()) {
    const Turn t = queue.front();
    queue.pop_front();
    offer(image_turn(s, t));
  }
  std::vector<WhiteheadGraph> out(g.spaces.size());
  std::vector<int> slot(static_cast<std::size_t>(g.num_oriented_edges()), -1);
  for (std::size_t v = 0; v < g.spaces.size(); ++v) out[v].space = static_cast<int>(v);
  for (Edge e = 0; e < g.num_oriented_edges(); ++e) {
    auto& w = out[static_cast<std::size_t>(g.origin(e).space)];
    slot[static_cast<std::size_t>(e)] = static_cast<int>(w.directions.size());
    w.directions.push_back(e);
  }
  for (const Turn& t : turns) {
    const Edge a = inverse(t.in);
    const Edge b = t.out;
    auto& w = out[static_cast<std::size_t>(g.origin(b).space)];
    w.arcs.emplace_back(std::min(a, b), std::max(a, b));
  }
  for (auto& w : out) {
    std::sort(w.arcs.begin(), w.arcs.end());
    w.arcs.erase(std::unique(w.arcs.begin(), w.arcs.end()), w.arcs.end());
    std::vector<int> parent(w.directions.size());
    std::iota(parent.begin(), parent.end(), 0);
    std::function<int(int)> find = [&](int x) {
      return parent[static_cast<std::size_t>(x)] == x ? x : parent[static_cast<std::size_t>(x)] = find(parent[static_cast<std::size_t>(x)]);
    };
    for (const auto& [a, b] : w.arcs) {
      parent[static_cast<std::size_t>(find(slot[static_cast<std::size_t>(a)]))] = find(slot[static_cast<std::size_t>(b)]);
    }
    std::set<int> roots;
    for (std::size_t i = 0; i < w.directions.size(); ++i) roots.insert(find(static_cast<int>(i)));
    w.connected = roots.size() <= 1;
  }
  return out;
}

}  // namespace ttgos
