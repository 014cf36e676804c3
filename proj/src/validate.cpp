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

#include <numeric>
#include <set>

#include "ttgos/gos.hpp"
#include "ttgos/groupoid.hpp"

namespace ttgos {
namespace {

bool connected(int n, const std::vector<std::pair<int, int>>& arcs) {
  if (n == 0) return true;
  std::vector<int> parent(static_cast<std::size_t>(n));
  std::iota(parent.begin(), parent.end(), 0);
  auto root = [&](int x) {
    while (parent[static_cast<std::size_t>(x)] != x) x = parent[static_cast<std::size_t>(x)];
    return x;
  };
  int parts = n;
  for (auto [a, b] : arcs) {
    const int ra = root(a);
    const int rb = root(b);
    if (ra != rb) {
      parent[static_cast<std::size_t>(ra)] = rb;
      --parts;
    }
  }
  return parts == 1;
}

}  // namespace

ValidationReport validate_system(const System& s) {
  ValidationReport rep;
  const auto& g = s.graph();
  std::set<std::string> names;
  for (const auto& te : g.edges) {
    if (te.name.empty()) rep.violations.push_back("top edge with an empty name");
    if (!names.insert(te.name).second || !names.insert(inverse_name(te.name)).second) {
      rep.violations.push_back("top edge name " + te.name + " clashes with another edge name");
    }
  }
  for (const auto& sp : g.spaces) {
    std::vector<std::pair<int, int>> arcs;
    for (const auto& le : sp.edges) arcs.emplace_back(le.from, le.to);
    if (!connected(static_cast<int>(sp.vertices.size()), arcs)) {
      rep.violations.push_back("vertex space " + sp.name + " is not connected");
    }
  }
  {
    std::vector<std::pair<int, int>> arcs;
    for (const auto& te : g.edges) arcs.emplace_back(te.from.space, te.to.space);
    if (!connected(static_cast<int>(g.spaces.size()), arcs)) {
      rep.violations.push_back("underlying graph is not connected");
    }
  }
  // f must permute the essential vertex spaces.
  std::set<int> hit;
  for (std::size_t v = 0; v < g.spaces.size(); ++v) {
    if (!g.spaces[v].essential()) continue;
    const int w = s.space_image(static_cast<int>(v));
    if (!g.spaces[static_cast<std::size_t>(w)].essential()) {
      rep.violations.push_back("essential space " + g.spaces[v].name + " maps to inessential " +
                               g.spaces[static_cast<std::size_t>(w)].name);
    } else if (!hit.insert(w).second) {
      rep.violations.push_back("two essential spaces map to " + g.spaces[static_cast<std::size_t>(w)].name);
    }
  }
  for (std::size_t v = 0; v < g.spaces.size(); ++v) {
    try {
      const auto info = analyze_vertex_map(s, static_cast<int>(v));
      if (!info.injective) {
        rep.violations.push_back("vertex map of " + g.spaces[v].name +
                                 " is not pi_1-injective (rank " + std::to_string(info.source_betti) +
                                 " folds to " + std::to_string(info.folded_betti) + ")");
      }
    } catch (const Error& e) {
      rep.violations.push_back(e.what());
    }
  }
  return rep;
}

}  // namespace ttgos
