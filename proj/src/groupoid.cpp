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

#include "ttgos/groupoid.hpp"

#include <algorithm>
#include <numeric>
#include <queue>

namespace ttgos {

void free_reduce(std::vector<int>& word) {
  std::vector<int> out;
  out.reserve(word.size());
  for (int x : word) {
    if (!out.empty() && out.back() == (x ^ 1)) {
      out.pop_back();
    } else {
      out.push_back(x);
    }
  }
  word = std::move(out);
}

namespace {

std::vector<int> reversed_word(const std::vector<int>& w) {
  std::vector<int> r;
  r.reserve(w.size());
  for (auto it = w.rbegin(); it != w.rend(); ++it) r.push_back(*it ^ 1);
  return r;
}

void append(std::vector<int>& a, const std::vector<int>& b) { a.insert(a.end(), b.begin(), b.end()); }

}  // namespace

Folding::Folding(int num_vertices, bool track_bridges) : track_(track_bridges) {
  for (int i = 0; i < num_vertices; ++i) add_vertex();
}

int Folding::add_vertex() {
  const int v = static_cast<int>(parent_.size());
  parent_.push_back(v);
  members_.push_back({v});
  if (track_) bridge_.emplace_back();
  return v;
}

int Folding::add_edge(int from, int to, int label) {
  from_.push_back(from);
  to_.push_back(to);
  label_.push_back(label);
  live_.push_back(true);
  return static_cast<int>(from_.size()) - 1;
}

int Folding::label(int oe) const {
  const int l = label_[static_cast<std::size_t>(oe >> 1)];
  if (l == kContract) return kContract;
  return (oe & 1) ? (l ^ 1) : l;
}

int Folding::find(int v) const {
  while (parent_[static_cast<std::size_t>(v)] != v) {
    parent_[static_cast<std::size_t>(v)] = parent_[static_cast<std::size_t>(parent_[static_cast<std::size_t>(v)])];
    v = parent_[static_cast<std::size_t>(v)];
  }
  return v;
}

int Folding::num_classes() const {
  int n = 0;
  for (int v = 0; v < num_vertices(); ++v) n += find(v) == v ? 1 : 0;
  return n;
}

int Folding::num_live_edges() const {
  return static_cast<int>(std::count(live_.begin(), live_.end(), true));
}

long Folding::betti() const {
  // components of the folded graph via a second union-find over classes
  std::vector<int> comp(parent_.size());
  std::iota(comp.begin(), comp.end(), 0);
  auto root = [&](int x) {
    while (comp[static_cast<std::size_t>(x)] != x) x = comp[static_cast<std::size_t>(x)];
    return x;
  };
  for (int e = 0; e < num_edges(); ++e) {
    if (!live_[static_cast<std::size_t>(e)]) continue;
    const int a = root(find(from_[static_cast<std::size_t>(e)]));
    const int b = root(find(to_[static_cast<std::size_t>(e)]));
    if (a != b) comp[static_cast<std::size_t>(a)] = b;
  }
  long components = 0;
  for (int v = 0; v < num_vertices(); ++v) {
    if (find(v) == v && root(v) == v) ++components;
  }
  return static_cast<long>(num_live_edges()) - num_classes() + components;
}

// Identify a and b; w is a path from a to b with trivial label.
void Folding::merge(int a, int b, std::vector<int> w) {
  int ra = find(a);
  int rb = find(b);
  if (ra == rb) return;
  std::vector<int> bridge;  // from ra to rb
  if (track_) {
    bridge = bridge_[static_cast<std::size_t>(a)];
    append(bridge, w);
    append(bridge, reversed_word(bridge_[static_cast<std::size_t>(b)]));
  }
  if (members_[static_cast<std::size_t>(ra)].size() < members_[static_cast<std::size_t>(rb)].size()) {
    std::swap(ra, rb);
    bridge = reversed_word(bridge);
  }
  for (int y : members_[static_cast<std::size_t>(rb)]) {
    if (track_) {
      std::vector<int> nb = bridge;
      append(nb, bridge_[static_cast<std::size_t>(y)]);
      free_reduce(nb);
      bridge_[static_cast<std::size_t>(y)] = std::move(nb);
    }
    members_[static_cast<std::size_t>(ra)].push_back(y);
  }
  members_[static_cast<std::size_t>(rb)].clear();
  parent_[static_cast<std::size_t>(rb)] = ra;
}

void Folding::fold() {
  for (int e = 0; e < num_edges(); ++e) {
    if (live_[static_cast<std::size_t>(e)] && label_[static_cast<std::size_t>(e)] == kContract) {
      live_[static_cast<std::size_t>(e)] = false;
      merge(from_[static_cast<std::size_t>(e)], to_[static_cast<std::size_t>(e)], {2 * e});
    }
  }
  bool changed = true;
  while (changed) {
    changed = false;
    std::map<std::pair<int, int>, int> seen;
    for (int e = 0; e < num_edges() && !changed; ++e) {
      if (!live_[static_cast<std::size_t>(e)]) continue;
      for (int oe : {2 * e, 2 * e + 1}) {
        const auto key = std::make_pair(find(origin(oe)), label(oe));
        auto [it, inserted] = seen.emplace(key, oe);
        if (inserted) continue;
        const int o1 = it->second;
        if ((o1 >> 1) == e) continue;
        std::vector<int> w;
        if (track_) {
          w.push_back(o1 ^ 1);
          append(w, reversed_word(bridge_[static_cast<std::size_t>(origin(o1))]));
          append(w, bridge_[static_cast<std::size_t>(origin(oe))]);
          w.push_back(oe);
          free_reduce(w);
        }
        live_[static_cast<std::size_t>(e)] = false;
        merge(terminus(o1), terminus(oe), std::move(w));
        changed = true;
        break;
      }
    }
  }
  build_index();
}

void Folding::build_index() {
  out_.clear();
  for (int e = 0; e < num_edges(); ++e) {
    if (!live_[static_cast<std::size_t>(e)]) continue;
    for (int oe : {2 * e, 2 * e + 1}) out_[{find(origin(oe)), label(oe)}] = oe;
  }
}

std::optional<int> Folding::read(int start, const std::vector<int>& labels) const {
  int cur = find(start);
  for (int l : labels) {
    auto it = out_.find({cur, l});
    if (it == out_.end()) return std::nullopt;
    cur = find(terminus(it->second));
  }
  return cur;
}

std::optional<std::vector<int>> Folding::lift(int start, const std::vector<int>& labels,
                                              int end) const {
  if (!track_) fail(ErrorKind::kInternal, "lift needs bridge tracking");
  std::vector<int> path = reversed_word(bridge_[static_cast<std::size_t>(start)]);
  int cur = find(start);
  for (int l : labels) {
    auto it = out_.find({cur, l});
    if (it == out_.end()) return std::nullopt;
    const int oe = it->second;
    append(path, bridge_[static_cast<std::size_t>(origin(oe))]);
    path.push_back(oe);
    append(path, reversed_word(bridge_[static_cast<std::size_t>(terminus(oe))]));
    cur = find(terminus(oe));
  }
  if (cur != find(end)) return std::nullopt;
  append(path, bridge_[static_cast<std::size_t>(end)]);
  free_reduce(path);
  return path;
}

// ---------------------------------------------------------------------------

VertexMapFold::VertexMapFold(const System& s, int space)
    : system_(&s), space_(space), fold_(0, true) {
  const auto& g = s.graph();
  const auto& sp = g.spaces[static_cast<std::size_t>(space)];
  const auto& vm = s.morphism().vertex_maps[static_cast<std::size_t>(space)];
  const int nv = static_cast<int>(sp.vertices.size());
  for (int v = 0; v < nv; ++v) fold_.add_vertex();
  std::vector<int> target_of(static_cast<std::size_t>(nv));
  for (int v = 0; v < nv; ++v) target_of[static_cast<std::size_t>(v)] = vm.vertex_image[static_cast<std::size_t>(v)];
  for (std::size_t k = 0; k < sp.edges.size(); ++k) {
    const LocalPath& img = vm.edge_image[k];
    const int from = sp.edges[k].from;
    const int to = sp.edges[k].to;
    if (img.steps.empty()) {
      fold_.add_edge(from, to, Folding::kContract);
      pieces_.push_back({static_cast<int>(k), 0});
      continue;
    }
    int prev = from;
    const auto& tsp = g.spaces[static_cast<std::size_t>(img.space)];
    for (std::size_t j = 0; j < img.steps.size(); ++j) {
      int next = to;
      if (j + 1 < img.steps.size()) {
        next = fold_.add_vertex();
        target_of.push_back(tsp.terminus(img.steps[j]));
      }
      fold_.add_edge(prev, next, img.steps[j]);
      pieces_.push_back({static_cast<int>(k), static_cast<int>(j)});
      prev = next;
    }
  }
  fold_.fold();

  info_.source = space;
  info_.target = vm.target;
  info_.source_betti = sp.betti();
  info_.folded_betti = fold_.betti();
  info_.injective = info_.folded_betti == info_.source_betti;
  std::map<int, int> dense;
  for (int v = 0; v < fold_.num_vertices(); ++v) {
    const int r = fold_.find(v);
    if (dense.emplace(r, static_cast<int>(dense.size())).second) {
      info_.immersion.push_back(target_of[static_cast<std::size_t>(r)]);
    }
  }
  info_.folded_vertices = static_cast<int>(dense.size());
  for (int v = 0; v < nv; ++v) info_.quotient.push_back(dense.at(fold_.find(v)));
  for (int e = 0; e < fold_.num_edges(); ++e) {
    if (!fold_.live(e)) continue;
    info_.folded_edges.push_back({dense.at(fold_.find(fold_.origin(2 * e))),
                                  dense.at(fold_.find(fold_.terminus(2 * e))), fold_.label(2 * e)});
  }
}

std::optional<LocalPath> VertexMapFold::preimage(const LocalPath& psi, int p, int q) const {
  if (!info_.injective) {
    fail(ErrorKind::kHypothesis, "vertex map of space " +
                                     system_->graph().spaces[static_cast<std::size_t>(space_)].name +
                                     " is not pi_1-injective");
  }
  const auto& vm = system_->morphism().vertex_maps[static_cast<std::size_t>(space_)];
  if (psi.space != vm.target || vm.vertex_image[static_cast<std::size_t>(p)] != psi.start ||
      vm.vertex_image[static_cast<std::size_t>(q)] != psi.end) {
    return std::nullopt;
  }
  auto path = fold_.lift(p, psi.steps, q);
  if (!path) return std::nullopt;
  LocalPath chi = trivial_path(space_, p);
  chi.end = q;
  for (int oe : *path) {
    const Piece& pc = pieces_[static_cast<std::size_t>(oe >> 1)];
    if (pc.index == 0) chi.steps.push_back(2 * pc.edge + (oe & 1));
  }
  reduce_in_place(chi);
  if (system_->map_local(chi) != psi) {
    fail(ErrorKind::kInternal, "connecting-path lift does not map back onto its target");
  }
  return chi;
}

const VertexMapFold& GroupoidOracle::fold(int space) {
  std::lock_guard<std::mutex> lock(mu_);
  auto& slot = folds_[static_cast<std::size_t>(space)];
  if (!slot) slot = std::make_unique<VertexMapFold>(*system_, space);
  return *slot;
}

ImmersionFactorization analyze_vertex_map(const System& s, int space) {
  return VertexMapFold(s, space).factorization();
}

std::optional<LocalPath> connecting_preimage(const System& s, int space, const LocalPath& psi,
                                             int p, int q) {
  return VertexMapFold(s, space).preimage(psi, p, q);
}

// ---------------------------------------------------------------------------

bool subgroup_contains(const std::vector<std::vector<int>>& generators, std::vector<int> word) {
  free_reduce(word);
  if (word.empty()) return true;
  Folding f(1);
  for (auto gen : generators) {
    free_reduce(gen);
    if (gen.empty()) continue;
    int prev = 0;
    for (std::size_t i = 0; i < gen.size(); ++i) {
      const int next = i + 1 < gen.size() ? f.add_vertex() : 0;
      f.add_edge(prev, next, gen[i]);
      prev = next;
    }
  }
  f.fold();
  auto end = f.read(0, word);
  return end && *end == f.find(0);
}

namespace {

// The total graph: every local vertex, local edge and top edge.
struct TotalGraph {
  std::vector<int> offset;  // per space
  int num_vertices = 0;
  std::vector<int> from, to;
  int local_edge_base = 0;  // index of the first top edge
  std::vector<int> space_edge_offset;

  int local_label(int space, LocalEdge s) const {
    return 2 * (space_edge_offset[static_cast<std::size_t>(space)] + s / 2) + (s & 1);
  }
  int top_label(Edge e) const { return 2 * (local_edge_base + e / 2) + (e & 1); }
  int origin(int label) const {
    return (label & 1) ? to[static_cast<std::size_t>(label >> 1)] : from[static_cast<std::size_t>(label >> 1)];
  }
  int terminus(int label) const { return origin(label ^ 1); }
};

TotalGraph total_graph(const GraphOfSpaces& g) {
  TotalGraph t;
  for (const auto& sp : g.spaces) {
    t.offset.push_back(t.num_vertices);
    t.num_vertices += static_cast<int>(sp.vertices.size());
  }
  int edges = 0;
  for (std::size_t s = 0; s < g.spaces.size(); ++s) {
    t.space_edge_offset.push_back(edges);
    for (const auto& le : g.spaces[s].edges) {
      t.from.push_back(t.offset[s] + le.from);
      t.to.push_back(t.offset[s] + le.to);
      ++edges;
    }
  }
  t.local_edge_base = edges;
  for (const auto& te : g.edges) {
    t.from.push_back(t.offset[static_cast<std::size_t>(te.from.space)] + te.from.vertex);
    t.to.push_back(t.offset[static_cast<std::size_t>(te.to.space)] + te.to.vertex);
  }
  return t;
}

void append_local(const TotalGraph& t, std::vector<int>& w, const LocalPath& p) {
  for (LocalEdge s : p.steps) w.push_back(t.local_label(p.space, s));
}

}  // namespace

bool is_surjective_on_pi1(const System& s) {
  const auto& g = s.graph();
  const TotalGraph t = total_graph(g);
  const int ne = static_cast<int>(t.from.size());

  // image of every oriented total-graph edge
  std::vector<std::vector<int>> image(static_cast<std::size_t>(2 * ne));
  for (std::size_t sp = 0; sp < g.spaces.size(); ++sp) {
    const auto& vm = s.morphism().vertex_maps[sp];
    for (std::size_t k = 0; k < g.spaces[sp].edges.size(); ++k) {
      std::vector<int> w;
      append_local(t, w, vm.edge_image[k]);
      image[static_cast<std::size_t>(t.local_label(static_cast<int>(sp), static_cast<int>(2 * k)))] = w;
    }
  }
  for (std::size_t k = 0; k < g.edges.size(); ++k) {
    const EdgeImage& img = s.image(static_cast<Edge>(2 * k));
    std::vector<int> w;
    append_local(t, w, img.lead);
    for (std::size_t i = 0; i < img.path.edges.size(); ++i) {
      if (i > 0) append_local(t, w, img.path.connectors[i - 1]);
      w.push_back(t.top_label(img.path.edges[i]));
    }
    append_local(t, w, img.trail);
    image[static_cast<std::size_t>(t.top_label(static_cast<Edge>(2 * k)))] = w;
  }
  for (int e = 0; e < ne; ++e) image[static_cast<std::size_t>(2 * e + 1)] = reversed_word(image[static_cast<std::size_t>(2 * e)]);

  // spanning tree from vertex 0 (root paths as label words)
  std::vector<std::optional<std::vector<int>>> tree(static_cast<std::size_t>(t.num_vertices));
  std::vector<bool> tree_edge(static_cast<std::size_t>(ne), false);
  std::vector<std::vector<int>> adj(static_cast<std::size_t>(t.num_vertices));
  for (int l = 0; l < 2 * ne; ++l) adj[static_cast<std::size_t>(t.origin(l))].push_back(l);
  tree[0] = std::vector<int>{};
  std::queue<int> bfs;
  bfs.push(0);
  while (!bfs.empty()) {
    const int v = bfs.front();
    bfs.pop();
    for (int l : adj[static_cast<std::size_t>(v)]) {
      const int w = t.terminus(l);
      if (tree[static_cast<std::size_t>(w)]) continue;
      auto p = *tree[static_cast<std::size_t>(v)];
      p.push_back(l);
      tree[static_cast<std::size_t>(w)] = std::move(p);
      tree_edge[static_cast<std::size_t>(l >> 1)] = true;
      bfs.push(w);
    }
  }
  for (const auto& p : tree) {
    if (!p) return false;  // disconnected total graph
  }
  auto loop_at_root = [&](int e) {
    std::vector<int> w = *tree[static_cast<std::size_t>(t.from[static_cast<std::size_t>(e)])];
    w.push_back(2 * e);
    append(w, reversed_word(*tree[static_cast<std::size_t>(t.to[static_cast<std::size_t>(e)])]));
    free_reduce(w);
    return w;
  };

  std::vector<std::vector<int>> gens;
  for (int e = 0; e < ne; ++e) {
    if (tree_edge[static_cast<std::size_t>(e)]) continue;
    std::vector<int> img;
    for (int l : loop_at_root(e)) append(img, image[static_cast<std::size_t>(l)]);
    free_reduce(img);
    gens.push_back(std::move(img));
  }
  // f(root); basis loops re-based there through the tree
  const AttachPoint root_point{0, 0};
  const AttachPoint froot = s.map_point(root_point);
  const int fr = t.offset[static_cast<std::size_t>(froot.space)] + froot.vertex;
  const std::vector<int> to_root = reversed_word(*tree[static_cast<std::size_t>(fr)]);
  for (int e = 0; e < ne; ++e) {
    if (tree_edge[static_cast<std::size_t>(e)]) continue;
    std::vector<int> w = to_root;
    append(w, loop_at_root(e));
    append(w, *tree[static_cast<std::size_t>(fr)]);
    if (!subgroup_contains(gens, w)) return false;
  }
  return true;
}

}  // namespace ttgos
