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

// Legalization: iterate reduce o f until every illegal turn is the tip of an
// INP occurrence and the occurrences do not overlap.

#include <algorithm>
#include <numeric>

#include "ttgos/inp.hpp"

namespace ttgos {

namespace {

struct Occurrence {
  int record = -1;
  std::size_t first = 0;
  std::size_t last = 0;
  std::optional<Locus> head;  // inner end point, read in path direction
  std::optional<Locus> tail;
};

// <0, 0, >0 as x lies before, at, after y on their common edge.
int compare(Context& ctx, const Locus& x, const Locus& y) {
  if (x.edge != y.edge) fail(ErrorKind::kInternal, "comparing endpoints on different edges");
  const int p = std::lcm(x.power, y.power);
  const std::uint64_t a = lift_occurrence(ctx.tables, x, p);
  const std::uint64_t b = lift_occurrence(ctx.tables, y, p);
  return a < b ? -1 : (a > b ? 1 : 0);
}

std::optional<Occurrence> find_at(Context& ctx, const InpAnalysis& a, const EdgePath& lin,
                                  std::size_t i) {
  const std::size_t n = lin.length();
  for (std::size_t r = 0; r < a.inps.size(); ++r) {
    const InpRecord& rec = a.inps[r];
    if (!rec.verified) continue;
    for (int o = 0; o < 2; ++o) {
      const VEntry& e = rec.prolongation;
      const EdgePath& b1 = o == 0 ? e.branch1 : e.branch2;
      const EdgePath& b2 = o == 0 ? e.branch2 : e.branch1;
      const LocalPath tip = o == 0 ? e.tip : e.tip.reversed();
      const InpEnd& h = o == 0 ? rec.head : rec.tail;
      const InpEnd& t = o == 0 ? rec.tail : rec.head;
      const std::size_t m1 = b1.length();
      const std::size_t m2 = b2.length();
      if (i + 1 < m1 || i + 1 + m2 > n) continue;
      if (lin.connectors[i] != tip) continue;
      if (subpath(lin, i + 1 - m1, m1) != reversed(b1)) continue;
      if (subpath(lin, i + 1, m2) != b2) continue;
      Occurrence occ;
      occ.record = static_cast<int>(r);
      occ.first = i + 1 - m1;
      occ.last = i + m2;
      if (!h.vertex) occ.head = flip_locus(ctx.tables, h.locus);
      if (!t.vertex) occ.tail = t.locus;
      return occ;
    }
  }
  return std::nullopt;
}

// Checks that occurrence y starts after x ends. Sets `touch` when they meet
// at a point inside a shared edge.
bool ordered(Context& ctx, const Occurrence& x, std::size_t y_first, const std::optional<Locus>& y_head,
             bool& touch) {
  touch = false;
  if (x.last < y_first) return true;
  if (x.last > y_first || !x.tail || !y_head) return false;
  const int c = compare(ctx, *x.tail, *y_head);
  touch = c == 0;
  return c <= 0;
}

void add_piece(std::vector<Piece>& out, bool inp, int record, std::size_t first, std::size_t last,
               bool hp, bool tp, std::size_t modulus) {
  Piece p;
  p.inp = inp;
  p.record = record;
  p.first = modulus ? first % modulus : first;
  p.last = modulus ? last % modulus : last;
  p.head_partial = hp;
  p.tail_partial = tp;
  out.push_back(p);
}

// Core test on a linear path; for closed paths `lin` is three copies of the
// loop and `tips` lie in the middle copy.
Decomposition decompose(Context& ctx, const InpAnalysis& a, const EdgePath& lin,
                        const std::vector<std::size_t>& tips, std::size_t q) {
  Decomposition d;
  std::vector<Occurrence> occ;
  for (std::size_t i : tips) {
    auto o = find_at(ctx, a, lin, i);
    if (!o) return d;
    occ.push_back(*o);
  }
  std::vector<bool> touch(occ.size() + 1, false);
  for (std::size_t k = 0; k + 1 < occ.size(); ++k) {
    bool t = false;
    if (!ordered(ctx, occ[k], occ[k + 1].first, occ[k + 1].head, t)) return d;
    touch[k + 1] = t;
  }
  if (q > 0) {
    bool t = false;
    if (!ordered(ctx, occ.back(), occ.front().first + q, occ.front().head, t)) return d;
    touch[0] = t;
  }
  d.pseudo_legal = true;
  // Walk the pieces; `pos` is the first edge not yet covered by an INP.
  std::size_t pos = q > 0 ? occ.back().last + (occ.back().tail ? 0 : 1) : 0;
  bool pos_partial = q > 0 && occ.back().tail.has_value();
  if (q > 0) pos -= q;
  for (std::size_t k = 0; k < occ.size(); ++k) {
    const Occurrence& o = occ[k];
    const bool hp = o.head.has_value();
    const std::size_t gap_last_plus = o.first + (hp ? 1 : 0);
    if (!touch[k] && pos < gap_last_plus) {
      add_piece(d.pieces, false, -1, pos, gap_last_plus - 1, pos_partial, hp, q);
    }
    add_piece(d.pieces, true, o.record, o.first, o.last, hp, o.tail.has_value(), q);
    pos = o.last + (o.tail ? 0 : 1);
    pos_partial = o.tail.has_value();
  }
  if (q == 0 && pos < lin.length()) add_piece(d.pieces, false, -1, pos, lin.length() - 1, pos_partial, false, 0);
  return d;
}

}  // namespace

Decomposition pseudo_legal_decomposition(Context& ctx, const InpAnalysis& a, const EdgePath& p) {
  std::vector<std::size_t> tips;
  for (std::size_t i = 0; i + 1 < p.length(); ++i) {
    if (ctx.closure.is_illegal(turn_at(p, i))) tips.push_back(i);
  }
  if (tips.empty()) {
    Decomposition d;
    d.pseudo_legal = true;
    if (!p.empty()) add_piece(d.pieces, false, -1, 0, p.length() - 1, false, false, 0);
    return d;
  }
  return decompose(ctx, a, p, tips, 0);
}

Decomposition pseudo_legal_decomposition(Context& ctx, const InpAnalysis& a, const ClosedPath& p) {
  const std::size_t q = p.edges.size();
  Decomposition d;
  if (q == 0) {
    d.pseudo_legal = true;
    return d;
  }
  EdgePath lin;
  for (int copy = 0; copy < 3; ++copy) {
    for (std::size_t i = 0; i < q; ++i) {
      if (!lin.edges.empty()) lin.connectors.push_back(p.connectors[(i + q - 1) % q]);
      lin.edges.push_back(p.edges[i]);
    }
  }
  std::vector<std::size_t> tips;
  for (std::size_t i = 0; i < q; ++i) {
    if (ctx.closure.is_illegal(turn_at(lin, q + i))) tips.push_back(q + i);
  }
  if (tips.empty()) {
    d.pseudo_legal = true;
    add_piece(d.pieces, false, -1, 0, q - 1, false, false, 0);
    return d;
  }
  return decompose(ctx, a, lin, tips, q);
}

namespace {

std::uint64_t derived_cap(const InpAnalysis& a, int ilt) {
  const auto vplus = static_cast<std::uint64_t>(a.v.size() + 1);
  const auto t4 = static_cast<std::uint64_t>(a.t4);
  return static_cast<std::uint64_t>(ilt) * (vplus + t4) + t4;
}

void check_length(std::uint64_t len, const LegalizeOptions& o) {
  if (len > o.max_length) {
    fail(ErrorKind::kCapacity,
         "image length cap (max_image_length=" + std::to_string(o.max_length) + ") exceeded");
  }
}

std::uint64_t image_length(Context& ctx, const std::vector<Edge>& edges) {
  std::uint64_t n = 0;
  for (Edge e : edges) n = sat_add(n, ctx.tables.length(e, 1));
  return n;
}

}  // namespace

Legalization legalize(Context& ctx, const InpAnalysis& a, const EdgePath& gamma, const LegalizeOptions& o) {
  const GraphOfSpaces& g = ctx.graph();
  g.check(gamma);
  Legalization r;
  ReducedPath red = reduce_path(g, gamma);
  if (std::holds_alternative<ZeroPath>(red)) {
    r.zero = true;
    r.decomposition.pseudo_legal = true;
    r.result = EdgePath{};
    return r;
  }
  EdgePath p = std::get<EdgePath>(std::move(red));
  r.ilt_trace.push_back(ctx.closure.ilt(p));
  r.cap = o.max_iterations ? *o.max_iterations : derived_cap(a, r.ilt_trace.front());
  for (;;) {
    r.decomposition = pseudo_legal_decomposition(ctx, a, p);
    if (r.decomposition.pseudo_legal) break;
    if (static_cast<std::uint64_t>(r.t) >= r.cap) {
      fail(ErrorKind::kInternal, "legalization did not finish within " + std::to_string(r.cap) + " iterations");
    }
    check_length(image_length(ctx, p.edges), o);
    red = reduce_path(g, map_path(ctx.system, p));
    ++r.t;
    if (std::holds_alternative<ZeroPath>(red)) {
      r.zero = true;
      r.decomposition = Decomposition{true, {}};
      r.ilt_trace.push_back(0);
      r.result = EdgePath{};
      return r;
    }
    p = std::get<EdgePath>(std::move(red));
    r.ilt_trace.push_back(ctx.closure.ilt(p));
  }
  r.result = std::move(p);
  return r;
}

Legalization legalize(Context& ctx, const InpAnalysis& a, const ClosedPath& gamma, const LegalizeOptions& o) {
  const GraphOfSpaces& g = ctx.graph();
  Legalization r;
  ClosedPath p = reduce_path(g, gamma);
  auto settle_zero = [&]() {
    r.zero = true;
    r.decomposition = Decomposition{true, {}};
  };
  if (p.in_vertex_space()) {
    settle_zero();
    r.ilt_trace.push_back(0);
    r.result = p;
    return r;
  }
  r.ilt_trace.push_back(ctx.closure.ilt(p));
  r.cap = o.max_iterations ? *o.max_iterations : derived_cap(a, r.ilt_trace.front());
  for (;;) {
    r.decomposition = pseudo_legal_decomposition(ctx, a, p);
    if (r.decomposition.pseudo_legal) break;
    if (static_cast<std::uint64_t>(r.t) >= r.cap) {
      fail(ErrorKind::kInternal, "legalization did not finish within " + std::to_string(r.cap) + " iterations");
    }
    check_length(image_length(ctx, p.edges), o);
    p = reduce_path(g, map_path(ctx.system, p));
    ++r.t;
    if (p.in_vertex_space()) {
      settle_zero();
      r.ilt_trace.push_back(0);
      break;
    }
    r.ilt_trace.push_back(ctx.closure.ilt(p));
  }
  r.result = std::move(p);
  return r;
}

DecayReport decay_check(Context& ctx, const InpAnalysis& a, const EdgePath& gamma, const LegalizeOptions& o) {
  DecayReport d;
  const Legalization l = legalize(ctx, a, gamma, o);
  d.t = l.t;
  d.ilt_before = l.ilt_trace.front();
  d.ilt_after = l.ilt_trace.back();
  const GraphOfSpaces& g = ctx.graph();
  ReducedPath red = reduce_path(g, gamma);
  for (int k = 0; k < a.t4 && std::holds_alternative<EdgePath>(red); ++k) {
    const EdgePath& p = std::get<EdgePath>(red);
    check_length(image_length(ctx, p.edges), o);
    red = reduce_path(g, map_path(ctx.system, p));
  }
  d.ilt_t4 = std::holds_alternative<EdgePath>(red) ? ctx.closure.ilt(std::get<EdgePath>(red)) : 0;
  d.lhs = 2 * (static_cast<std::int64_t>(d.ilt_t4) - d.ilt_after);
  d.rhs = static_cast<std::int64_t>(d.ilt_before) - d.ilt_after;
  d.holds = d.lhs <= d.rhs;
  return d;
}

}  // namespace ttgos
