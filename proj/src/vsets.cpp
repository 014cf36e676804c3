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

#include "ttgos/vsets.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <set>
#include <tuple>

namespace ttgos {

bool VEntry::operator<(const VEntry& o) const {
  return std::tie(branch1, tip, branch2) < std::tie(o.branch1, o.tip, o.branch2);
}

bool VEntry::operator==(const VEntry& o) const {
  return branch1 == o.branch1 && tip == o.tip && branch2 == o.branch2;
}

VEntry canonical(VEntry e) {
  VEntry r = e;
  std::swap(r.branch1, r.branch2);
  std::swap(r.reach1, r.reach2);
  r.tip = e.tip.reversed();
  return r.eta() < e.eta() ? r : e;
}

VEntry split_at(const EdgePath& eta, std::size_t tip_index) {
  if (tip_index + 1 >= eta.length()) fail(ErrorKind::kDomain, "tip must be an interior connector");
  VEntry e;
  e.branch1 = reversed(subpath(eta, 0, tip_index + 1));
  e.tip = eta.connectors[tip_index];
  e.branch2 = subpath(eta, tip_index + 1, eta.length() - tip_index - 1);
  return e;
}

std::optional<VEntry> v_membership(Context& ctx, int t, const EdgePath& branch1,
                                   const LocalPath& tip, const EdgePath& branch2) {
  if (t < 1) fail(ErrorKind::kDomain, "V(f^t) needs t >= 1");
  if (branch1.empty() || branch2.empty()) fail(ErrorKind::kDomain, "empty branch");
  if (branch1.edges.front() == branch2.edges.front()) return std::nullopt;
  if (!ctx.closure.legal(branch1) || !ctx.closure.legal(branch2)) return std::nullopt;
  const Turn at_tip{inverse(branch1.edges.front()), tip, branch2.edges.front()};
  if (degenerate(at_tip)) return std::nullopt;
  const Backtrack b = backtrack(ctx.tables, branch1, tip, branch2, t);
  if (!b.tip_contracts || b.common < 1) return std::nullopt;
  if (b.common <= b.before_last1 || b.common <= b.before_last2) return std::nullopt;
  VEntry e{branch1, tip, branch2, b.common, b.reach1, b.reach2};
  return e;
}

std::optional<VEntry> v_membership(Context& ctx, int t, const EdgePath& eta, std::size_t tip_index) {
  ctx.graph().check(eta);
  const VEntry e = split_at(eta, tip_index);
  return v_membership(ctx, t, e.branch1, e.tip, e.branch2);
}

namespace {

using Continuations = std::map<Edge, std::vector<std::pair<LocalPath, Edge>>>;

Continuations index_turns(const std::set<Turn>& turns) {
  Continuations out;
  for (const Turn& u : turns) {
    out[u.in].emplace_back(u.connector, u.out);
    const Turn r = reverse(u);
    if (r != u) out[r.in].emplace_back(r.connector, r.out);
  }
  return out;
}

std::vector<EdgePath> extensions(const Continuations& next, const EdgePath& b) {
  std::vector<EdgePath> out;
  auto it = next.find(b.edges.back());
  if (it == next.end()) return out;
  for (const auto& [chi, e] : it->second) {
    EdgePath x = b;
    x.connectors.push_back(chi);
    x.edges.push_back(e);
    out.push_back(std::move(x));
  }
  return out;
}

}  // namespace

std::vector<VEntry> enumerate_v(Context& ctx, int t, const VLimits& limits) {
  if (t < 1) fail(ErrorKind::kDomain, "V(f^t) needs t >= 1");
  const Continuations next = index_turns(allowed_turns(ctx.system, ctx.oracle, ctx.closure, t));
  std::set<VEntry> found;
  std::deque<VEntry> queue;
  auto offer = [&](const EdgePath& b1, const LocalPath& tip, const EdgePath& b2) {
    if (b1.length() + b2.length() > limits.max_length) {
      fail(ErrorKind::kCapacity, "V-set entry longer than max_length=" + std::to_string(limits.max_length));
    }
    auto m = v_membership(ctx, t, b1, tip, b2);
    if (!m) return;
    if (found.insert(canonical(*m)).second) {
      if (found.size() > limits.max_entries) {
        fail(ErrorKind::kCapacity, "V-set exceeded max_entries=" + std::to_string(limits.max_entries));
      }
      queue.push_back(std::move(*m));
    }
  };
  for (const auto& [turn, time] : ctx.closure.illegal) {
    if (time == 0 || time > t) continue;
    offer(single_edge(inverse(turn.in)), turn.connector, single_edge(turn.out));
  }
  while (!queue.empty()) {
    const VEntry e = std::move(queue.front());
    queue.pop_front();
    const auto x1 = extensions(next, e.branch1);
    const auto x2 = extensions(next, e.branch2);
    for (const auto& b1 : x1) offer(b1, e.tip, e.branch2);
    for (const auto& b2 : x2) offer(e.branch1, e.tip, b2);
    for (const auto& b1 : x1) {
      for (const auto& b2 : x2) offer(b1, e.tip, b2);
    }
  }
  return {found.begin(), found.end()};
}

VEntry trim_to_v(Context& ctx, int t, const EdgePath& branch1, const LocalPath& tip,
                 const EdgePath& branch2) {
  EdgePath b1 = branch1;
  EdgePath b2 = branch2;
  for (;;) {
    if (b1.empty() || b2.empty()) fail(ErrorKind::kDomain, "path does not shrink into V(f^t)");
    if (auto m = v_membership(ctx, t, b1, tip, b2)) return *m;
    const std::uint64_t l1 = ctx.tables.length(b1, t);
    const std::uint64_t l2 = ctx.tables.length(b2, t);
    auto drop = [](EdgePath& b) {
      b.edges.pop_back();
      if (!b.connectors.empty()) b.connectors.pop_back();
    };
    if (l1 >= l2) drop(b1);
    if (l2 >= l1) drop(b2);
  }
}

std::string to_string(const GraphOfSpaces& g, const VEntry& e) { return to_string(g, e.eta()); }

}  // namespace ttgos
