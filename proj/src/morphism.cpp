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

#include <string>

#include "ttgos/gos.hpp"

namespace ttgos {

System::System(GraphOfSpaces graph, GosMorphism map)
    : graph_(std::move(graph)), map_(std::move(map)) {
  const auto& g = graph_;
  if (g.spaces.empty()) fail(ErrorKind::kStructural, "no vertex spaces");
  if (map_.vertex_maps.size() != g.spaces.size()) {
    fail(ErrorKind::kStructural, "one vertex map per vertex space is required");
  }
  if (map_.edge_images.size() != g.edges.size()) {
    fail(ErrorKind::kStructural, "one edge image per top edge is required");
  }
  const int ns = static_cast<int>(g.spaces.size());
  for (const auto& sp : g.spaces) {
    if (sp.vertices.empty()) fail(ErrorKind::kStructural, "vertex space " + sp.name + " is empty");
    for (const auto& le : sp.edges) {
      const int nv = static_cast<int>(sp.vertices.size());
      if (le.from < 0 || le.from >= nv || le.to < 0 || le.to >= nv) {
        fail(ErrorKind::kStructural, "local edge " + le.name + " has a dangling endpoint");
      }
    }
  }
  for (const auto& te : g.edges) {
    for (const AttachPoint& p : {te.from, te.to}) {
      if (p.space < 0 || p.space >= ns || p.vertex < 0 ||
          p.vertex >= static_cast<int>(g.spaces[static_cast<std::size_t>(p.space)].vertices.size())) {
        fail(ErrorKind::kStructural, "top edge " + te.name + " has a dangling attaching point");
      }
    }
  }
  for (int v = 0; v < ns; ++v) {
    const auto& vm = map_.vertex_maps[static_cast<std::size_t>(v)];
    const auto& sp = g.spaces[static_cast<std::size_t>(v)];
    if (vm.target < 0 || vm.target >= ns) {
      fail(ErrorKind::kStructural, "vertex map of " + sp.name + " has an unknown target");
    }
    const auto& tsp = g.spaces[static_cast<std::size_t>(vm.target)];
    if (vm.vertex_image.size() != sp.vertices.size() || vm.edge_image.size() != sp.edges.size()) {
      fail(ErrorKind::kStructural, "vertex map of " + sp.name + " is incomplete");
    }
    for (int w : vm.vertex_image) {
      if (w < 0 || w >= static_cast<int>(tsp.vertices.size())) {
        fail(ErrorKind::kStructural, "vertex map of " + sp.name + " sends a vertex out of range");
      }
    }
    for (std::size_t k = 0; k < sp.edges.size(); ++k) {
      const LocalPath& img = vm.edge_image[k];
      g.check(img);
      if (img.space != vm.target ||
          img.start != vm.vertex_image[static_cast<std::size_t>(sp.edges[k].from)] ||
          img.end != vm.vertex_image[static_cast<std::size_t>(sp.edges[k].to)]) {
        fail(ErrorKind::kStructural, "image of local edge " + sp.edges[k].name +
                                         " does not match the vertex images of its endpoints");
      }
    }
  }
  oriented_.resize(2 * g.edges.size());
  for (std::size_t k = 0; k < g.edges.size(); ++k) {
    const EdgeImage& img = map_.edge_images[k];
    const std::string& name = g.edges[k].name;
    if (img.path.empty()) fail(ErrorKind::kStructural, "image of " + name + " has length 0");
    g.check(img.path);
    g.check(img.lead);
    g.check(img.trail);
    const AttachPoint from = map_point(g.edges[k].from);
    const AttachPoint to = map_point(g.edges[k].to);
    const AttachPoint first = g.origin(img.path.edges.front());
    const AttachPoint last = g.terminus(img.path.edges.back());
    if (img.lead.space != from.space || img.lead.start != from.vertex ||
        img.lead.space != first.space || img.lead.end != first.vertex) {
      fail(ErrorKind::kStructural, "image of " + name + " does not start at the image of its origin");
    }
    if (img.trail.space != last.space || img.trail.start != last.vertex ||
        img.trail.space != to.space || img.trail.end != to.vertex) {
      fail(ErrorKind::kStructural, "image of " + name + " does not end at the image of its terminus");
    }
    oriented_[2 * k] = img;
    oriented_[2 * k + 1] = EdgeImage{img.trail.reversed(), reversed(img.path), img.lead.reversed()};
  }
}

AttachPoint System::map_point(AttachPoint p) const {
  const auto& vm = map_.vertex_maps[static_cast<std::size_t>(p.space)];
  return AttachPoint{vm.target, vm.vertex_image[static_cast<std::size_t>(p.vertex)]};
}

LocalPath System::map_local(const LocalPath& p) const {
  const auto& vm = map_.vertex_maps[static_cast<std::size_t>(p.space)];
  LocalPath r = trivial_path(vm.target, vm.vertex_image[static_cast<std::size_t>(p.start)]);
  for (LocalEdge s : p.steps) {
    const LocalPath& img = vm.edge_image[static_cast<std::size_t>(s / 2)];
    r = concat(r, (s & 1) ? img.reversed() : img);
  }
  return r;
}

LocalPath System::map_local(const LocalPath& p, int power) const {
  LocalPath r = p;
  for (int i = 0; i < power; ++i) r = map_local(r);
  return r;
}

bool System::is_absolute() const {
  for (const auto& sp : graph_.spaces) {
    if (sp.vertices.size() != 1 || !sp.edges.empty()) return false;
  }
  return true;
}

EdgePath map_path(const System& s, const EdgePath& p) {
  EdgePath r;
  for (std::size_t i = 0; i < p.edges.size(); ++i) {
    const EdgeImage& img = s.image(p.edges[i]);
    if (i > 0) {
      const EdgeImage& prev = s.image(p.edges[i - 1]);
      r.connectors.push_back(concat(prev.trail, s.map_local(p.connectors[i - 1]), img.lead));
    }
    r.edges.insert(r.edges.end(), img.path.edges.begin(), img.path.edges.end());
    r.connectors.insert(r.connectors.end(), img.path.connectors.begin(), img.path.connectors.end());
  }
  return r;
}

ClosedPath map_path(const System& s, const ClosedPath& p) {
  ClosedPath r;
  if (p.edges.empty()) {
    r.vertex_loop = s.map_local(p.vertex_loop);
    return r;
  }
  const std::size_t q = p.edges.size();
  for (std::size_t i = 0; i < q; ++i) {
    const EdgeImage& img = s.image(p.edges[i]);
    const EdgeImage& next = s.image(p.edges[(i + 1) % q]);
    r.edges.insert(r.edges.end(), img.path.edges.begin(), img.path.edges.end());
    r.connectors.insert(r.connectors.end(), img.path.connectors.begin(), img.path.connectors.end());
    r.connectors.push_back(concat(img.trail, s.map_local(p.connectors[i]), next.lead));
  }
  return r;
}

const EdgePath& ImageCache::iterate(Edge e, int t) {
  if (t < 1) fail(ErrorKind::kDomain, "iterate_edge_image needs t >= 1");
  if (t == 1) return system_->image(e).path;
  std::lock_guard<std::mutex> lock(mu_);
  auto it = cache_.find({e, t});
  if (it != cache_.end()) return *it->second;
  int level = t - 1;
  while (level > 1 && cache_.find({e, level}) == cache_.end()) --level;
  const EdgePath* cur = level == 1 ? &system_->image(e).path : cache_.at({e, level}).get();
  for (int k = level + 1; k <= t; ++k) {
    std::uint64_t len = 0;
    for (Edge x : cur->edges) len += system_->image(x).path.length();
    if (len > max_length_) {
      fail(ErrorKind::kCapacity, "image length cap (max_image_length=" +
                                     std::to_string(max_length_) + ") exceeded");
    }
    auto next = std::make_unique<EdgePath>(map_path(*system_, *cur));
    cur = next.get();
    cache_[{e, k}] = std::move(next);
  }
  return *cur;
}

}  // namespace ttgos
