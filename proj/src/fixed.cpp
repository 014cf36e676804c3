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

#include "ttgos/fixed.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <numeric>
#include <set>

#include "ttgos/absolute.hpp"

namespace ttgos {

namespace {

// An INP as a path of the original graph with symbolic inner ends.
struct FlatInp {
  EdgePath path;
  std::optional<Locus> head;  // on path.edges.front(), read in path direction
  std::optional<Locus> tail;  // on path.edges.back()
  int period = 1;
  int record = 0;
};

// Concatenation in a graph with point vertex spaces.
EdgePath cat(const GraphOfSpaces& g, const EdgePath& a, const EdgePath& b) {
  if (a.empty()) return b;
  if (b.empty()) return a;
  const AttachPoint at = g.terminus(a.edges.back());
  return join(a, trivial_path(at.space, at.vertex), b);
}

EdgePath point_path(const GraphOfSpaces& g, const std::vector<Edge>& edges) {
  EdgePath p;
  for (Edge e : edges) {
    if (!p.edges.empty()) {
      const AttachPoint at = g.terminus(p.edges.back());
      p.connectors.push_back(trivial_path(at.space, at.vertex));
    }
    p.edges.push_back(e);
  }
  return p;
}

// Expands a path of the collapsed system (names shared with the original)
// into original edges.
std::vector<Edge> expand(const System& from, const System& to, const EdgePath& p, const LocalPath* lead) {
  std::vector<Edge> out;
  const GraphOfSpaces& fg = from.graph();
  const GraphOfSpaces& tg = to.graph();
  auto local = [&](const LocalPath& c) {
    for (LocalEdge st : c.steps) {
      const auto& sp = fg.spaces[static_cast<std::size_t>(c.space)];
      const auto e = tg.find_edge(sp.edges[static_cast<std::size_t>(st >> 1)].name);
      if (!e) fail(ErrorKind::kInternal, "collapsed edge has no original");
      out.push_back(*e ^ (st & 1));
    }
  };
  if (lead) local(*lead);
  for (std::size_t i = 0; i < p.edges.size(); ++i) {
    if (i > 0) local(p.connectors[i - 1]);
    const auto e = tg.find_edge(fg.edge_name(p.edges[i]));
    if (!e) fail(ErrorKind::kInternal, "collapsed edge has no original");
    out.push_back(*e);
  }
  return out;
}

// Occurrence of a locus of the collapsed system, re-read in the original.
Locus translate_locus(const System& from, const System& to, PowerTables& ft, PowerTables& tt,
                      const Locus& l, std::uint64_t cap) {
  const auto e = to.graph().find_edge(from.graph().edge_name(l.edge));
  if (!e) fail(ErrorKind::kInternal, "collapsed edge has no original");
  const EdgePath fi = image_power(ft, single_edge(l.edge), l.power, cap);
  const EdgePath ti = image_power(tt, single_edge(*e), l.power, cap);
  // Walk the collapsed image and expand it alongside the original one.
  std::vector<Edge> flat;
  std::uint64_t at = 0;
  LocalPath lead = ft.lead(l.edge, l.power);
  for (std::size_t i = 0; i < fi.edges.size(); ++i) {
    const std::vector<Edge> piece =
        expand(from, to, single_edge(fi.edges[i]), i == 0 ? &lead : &fi.connectors[i - 1]);
    flat.insert(flat.end(), piece.begin(), piece.end());
    if (i == l.occurrence) at = flat.size() - 1;
  }
  const LocalPath trail = ft.trail(l.edge, l.power);
  const std::vector<Edge> tail = expand(from, to, EdgePath{}, &trail);
  flat.insert(flat.end(), tail.begin(), tail.end());
  if (flat != ti.edges) fail(ErrorKind::kInternal, "cannot place INP endpoint: images differ after collapsing");
  return Locus{*e, at, l.power};
}

std::vector<FlatInp> flatten(const System& s, const System& sys, Context& ctx, const InpAnalysis& a,
                             std::uint64_t cap) {
  std::vector<FlatInp> out;
  PowerTables tt(s);
  const bool same = &s == &sys;
  for (std::size_t r = 0; r < a.inps.size(); ++r) {
    const InpRecord& rec = a.inps[r];
    if (!rec.verified) continue;
    FlatInp f;
    f.period = rec.period;
    f.record = static_cast<int>(r);
    const EdgePath eta = rec.prolongation.eta();
    std::optional<Locus> head;
    std::optional<Locus> tail;
    if (!rec.head.vertex) head = flip_locus(ctx.tables, rec.head.locus);
    if (!rec.tail.vertex) tail = rec.tail.locus;
    if (same) {
      f.path = eta;
      f.head = head;
      f.tail = tail;
    } else {
      f.path = point_path(s.graph(), expand(sys, s, eta, nullptr));
      if (head) f.head = translate_locus(sys, s, ctx.tables, tt, *head, cap);
      if (tail) f.tail = translate_locus(sys, s, ctx.tables, tt, *tail, cap);
    }
    out.push_back(std::move(f));
  }
  return out;
}

int edge_period(const System& s, Edge e) {
  Edge x = e;
  for (int k = 1; k <= s.graph().num_oriented_edges(); ++k) {
    const EdgePath& p = s.image(x).path;
    if (p.length() != 1) return 0;
    x = p.edges.front();
    if (x == e) return k;
  }
  return 0;
}

}  // namespace

XStar build_xstar(const System& s, const XStarOptions& options) {
  if (!s.is_absolute()) fail(ErrorKind::kDomain, "X* is built for graph maps (point vertex spaces)");
  const GraphOfSpaces& g = s.graph();
  const std::size_t n = g.edges.size();
  const std::uint64_t cap = options.inp.max_image_length;
  const TransitionAnalysis ta = transition_analysis(s);
  const bool all_exp = std::all_of(ta.exponential.begin(), ta.exponential.end(), [](bool b) { return b; });

  XStar xs;
  std::vector<FlatInp> flat;
  std::unique_ptr<System> collapsed;
  const bool any_exp = std::any_of(ta.exponential.begin(), ta.exponential.end(), [](bool b) { return b; });
  if (any_exp) {
    if (!all_exp) collapsed = std::make_unique<System>(to_graph_of_spaces(s));
    const System& sys = collapsed ? *collapsed : s;
    Context ctx(sys);
    const InpAnalysis a = compute_inps(ctx, options.inp);
    xs.inps = a.inps;
    xs.diagnostics = a.diagnostics;
    flat = flatten(s, sys, ctx, a, cap);
  }

  std::vector<int> period(n, 0);
  int p = 1;
  for (std::size_t e = 0; e < n; ++e) {
    period[e] = edge_period(s, static_cast<Edge>(2 * e));
    if (period[e] > 0) p = std::lcm(p, period[e]);
  }
  for (const FlatInp& f : flat) p = std::lcm(p, f.period);
  if (options.power > 0) {
    // Keep the edges and INPs that f^power fixes.
    p = options.power;
    for (int& q : period) {
      if (q > 0 && p % q != 0) q = 0;
    }
    std::erase_if(flat, [p](const FlatInp& f) { return p % f.period != 0; });
  }
  if (p > options.max_power) {
    fail(ErrorKind::kCapacity, "power fixing all INPs exceeds max_power=" + std::to_string(options.max_power));
  }
  xs.power_used = p;

  // Split points per edge, as occurrences in f^p(e).
  PowerTables tables(s);
  std::vector<std::set<std::uint64_t>> splits(n);
  auto add_split = [&](Locus l) {
    if (l.edge & 1) l = flip_locus(tables, l);
    splits[static_cast<std::size_t>(l.edge >> 1)].insert(lift_occurrence(tables, l, p));
  };
  for (const FlatInp& f : flat) {
    if (f.head) add_split(*f.head);
    if (f.tail) add_split(*f.tail);
  }

  // The subdivided graph.
  GraphOfSpaces sub;
  for (const VertexSpace& sp : g.spaces) sub.spaces.push_back(VertexSpace{sp.name, {sp.name}, {}});
  std::vector<int> first_piece(n);
  for (std::size_t e = 0; e < n; ++e) {
    const TopEdge& te = g.edges[e];
    first_piece[e] = static_cast<int>(sub.edges.size());
    const std::size_t k = splits[e].size();
    if (k == 0) {
      sub.edges.push_back(TopEdge{te.name, te.from, te.to});
      continue;
    }
    Subdivision d;
    d.edge = te.name;
    d.occurrences.assign(splits[e].begin(), splits[e].end());
    AttachPoint prev = te.from;
    std::size_t i = 0;
    for (std::uint64_t occ : splits[e]) {
      (void)occ;
      const int v = static_cast<int>(sub.spaces.size());
      const std::string vname = te.name + "@" + std::to_string(i + 1);
      sub.spaces.push_back(VertexSpace{vname, {vname}, {}});
      d.pieces.push_back(te.name + "_" + std::to_string(i + 1));
      sub.edges.push_back(TopEdge{d.pieces.back(), prev, AttachPoint{v, 0}});
      prev = AttachPoint{v, 0};
      ++i;
    }
    d.pieces.push_back(te.name + "_" + std::to_string(k + 1));
    sub.edges.push_back(TopEdge{d.pieces.back(), prev, te.to});
    xs.subdivisions.push_back(std::move(d));
  }
  auto piece = [&](std::size_t e, std::size_t i) { return 2 * (first_piece[e] + static_cast<int>(i)); };
  auto pieces_of = [&](Edge x) {
    const auto e = static_cast<std::size_t>(x >> 1);
    std::vector<Edge> out;
    for (std::size_t i = 0; i <= splits[e].size(); ++i) out.push_back(piece(e, i));
    if (x & 1) {
      std::reverse(out.begin(), out.end());
      for (Edge& y : out) y = inverse(y);
    }
    return out;
  };
  auto rewrite = [&](const std::vector<Edge>& word, std::size_t from, std::size_t to) {
    std::vector<Edge> out;
    for (std::size_t i = from; i < to; ++i) {
      const auto ps = pieces_of(word[i]);
      out.insert(out.end(), ps.begin(), ps.end());
    }
    return out;
  };

  xs.origin.resize(2 * sub.edges.size());
  for (std::size_t e = 0; e < n; ++e) {
    const int k = static_cast<int>(splits[e].size()) + 1;
    for (int i = 0; i < k; ++i) {
      xs.origin[static_cast<std::size_t>(piece(e, static_cast<std::size_t>(i)))] = {static_cast<Edge>(2 * e), i, k};
      xs.origin[static_cast<std::size_t>(piece(e, static_cast<std::size_t>(i)) + 1)] =
          {static_cast<Edge>(2 * e + 1), k - 1 - i, k};
    }
  }

  GosMorphism m;
  for (std::size_t v = 0; v < sub.spaces.size(); ++v) {
    int target = static_cast<int>(v);
    if (v < g.spaces.size()) {
      AttachPoint at{static_cast<int>(v), 0};
      for (int k = 0; k < p; ++k) at = s.map_point(at);
      target = at.space;
    }
    m.vertex_maps.push_back(VertexMap{target, {0}, {}});
  }
  std::vector<std::vector<Edge>> images(sub.edges.size());
  for (std::size_t e = 0; e < n; ++e) {
    const std::vector<Edge> word = image_power(tables, single_edge(static_cast<Edge>(2 * e)), p, cap).edges;
    const std::vector<std::uint64_t> j(splits[e].begin(), splits[e].end());
    const std::size_t k = j.size();
    if (k == 0) {
      images[static_cast<std::size_t>(first_piece[e])] = rewrite(word, 0, word.size());
      continue;
    }
    for (std::uint64_t occ : j) {
      if (occ < 1 || occ + 2 > word.size() || word[occ] != static_cast<Edge>(2 * e)) {
        fail(ErrorKind::kInternal, "cannot place INP endpoint inside " + g.edges[e].name);
      }
    }
    std::vector<Edge> all;
    for (std::size_t i = 0; i <= k; ++i) all.push_back(piece(e, i));
    for (std::size_t i = 0; i <= k; ++i) {
      std::vector<Edge> img;
      if (i > 0) img.insert(img.end(), all.begin() + static_cast<std::ptrdiff_t>(i), all.end());
      const std::size_t lo = i == 0 ? 0 : static_cast<std::size_t>(j[i - 1]) + 1;
      const std::size_t hi = i == k ? word.size() : static_cast<std::size_t>(j[i]);
      const auto mid = rewrite(word, lo, hi);
      img.insert(img.end(), mid.begin(), mid.end());
      if (i < k) img.insert(img.end(), all.begin(), all.begin() + static_cast<std::ptrdiff_t>(i) + 1);
      images[static_cast<std::size_t>(first_piece[e]) + i] = std::move(img);
    }
  }
  for (std::size_t e = 0; e < sub.edges.size(); ++e) {
    EdgeImage ei;
    ei.path = point_path(sub, images[e]);
    const AttachPoint a = sub.origin(ei.path.edges.front());
    const AttachPoint b = sub.terminus(ei.path.edges.back());
    ei.lead = trivial_path(a.space, a.vertex);
    ei.trail = trivial_path(b.space, b.vertex);
    m.edge_images.push_back(std::move(ei));
  }
  xs.subdivided = std::make_shared<const System>(System(sub, std::move(m)));
  const System& gs = *xs.subdivided;

  for (std::size_t v = 0; v < sub.spaces.size(); ++v) {
    if (gs.space_image(static_cast<int>(v)) == static_cast<int>(v)) xs.vertices.push_back(static_cast<int>(v));
  }

  // Fixed edges, then one arc per INP.
  for (std::size_t e = 0; e < n; ++e) {
    if (period[e] == 0) continue;
    const Edge x = piece(e, 0);
    xs.arcs.push_back(XStar::Arc{g.edges[e].name, sub.origin(x).space, sub.terminus(x).space, single_edge(x), -1});
  }
  auto index_of = [&](const Locus& l) {
    Locus q = l;
    if (q.edge & 1) q = flip_locus(tables, q);
    const auto& sp = splits[static_cast<std::size_t>(q.edge >> 1)];
    return static_cast<std::size_t>(std::distance(sp.begin(), sp.find(lift_occurrence(tables, q, p))));
  };
  for (const FlatInp& f : flat) {
    std::vector<Edge> word;
    const std::size_t len = f.path.length();
    for (std::size_t i = 0; i < len; ++i) {
      const Edge x = f.path.edges[i];
      auto ps = pieces_of(x);
      // Point s sits between pieces s-1 and s (positive orientation).
      if (i == 0 && f.head) {
        const std::size_t sidx = index_of(*f.head) + 1;
        const std::size_t k1 = ps.size();
        const std::size_t drop = (x & 1) ? k1 - sidx : sidx;
        ps.erase(ps.begin(), ps.begin() + static_cast<std::ptrdiff_t>(drop));
      }
      if (i + 1 == len && f.tail) {
        const std::size_t sidx = index_of(*f.tail) + 1;
        const std::size_t k1 = pieces_of(x).size();
        const std::size_t keep = (x & 1) ? k1 - sidx : sidx;
        const std::size_t dropped = (i == 0 && f.head) ? k1 - ps.size() : 0;
        ps.resize(keep - dropped);
      }
      word.insert(word.end(), ps.begin(), ps.end());
    }
    const EdgePath h = point_path(sub, word);
    const std::string name = "<" + to_string(g, f.path) + ">";
    xs.arcs.push_back(XStar::Arc{name, sub.origin(h.edges.front()).space, sub.terminus(h.edges.back()).space, h,
                                 f.record});
  }
  // All arcs are fixed by g; check h o f* = [g o h].
  for (std::size_t i = 0; i < xs.arcs.size(); ++i) {
    xs.star_map.push_back(static_cast<int>(i));
    const ReducedPath img = reduce_path(sub, map_path(gs, xs.arcs[i].h));
    if (!std::holds_alternative<EdgePath>(img) || std::get<EdgePath>(img) != xs.arcs[i].h) {
      xs.diagnostics.push_back("arc " + xs.arcs[i].name + " is not fixed by f^" + std::to_string(p));
    }
  }
  return xs;
}

EdgePath to_original(const System& s, const XStar& xs, const EdgePath& p) {
  std::vector<Edge> out;
  int expect = 0;
  for (Edge x : p.edges) {
    const XStar::Origin& o = xs.origin[static_cast<std::size_t>(x)];
    if (o.piece != expect) fail(ErrorKind::kDomain, "path stops inside a subdivided edge");
    expect = o.piece + 1;
    if (expect == o.pieces) {
      out.push_back(o.edge);
      expect = 0;
    }
  }
  if (expect != 0) fail(ErrorKind::kDomain, "path stops inside a subdivided edge");
  return point_path(s.graph(), out);
}

namespace {

EdgePath iterate_reduced(const System& s, EdgePath p, int power) {
  for (int k = 0; k < power; ++k) {
    ReducedPath r = reduce_path(s.graph(), map_path(s, p));
    if (std::holds_alternative<ZeroPath>(r)) return {};
    p = std::get<EdgePath>(std::move(r));
  }
  return p;
}

bool is_fixed_vertex(const XStar& xs, int vertex) {
  return std::find(xs.vertices.begin(), xs.vertices.end(), vertex) != xs.vertices.end();
}

}  // namespace

std::vector<EdgePath> fixed_subgroup_generators(const System& s, const XStar& xs, int vertex) {
  if (vertex < 0 || static_cast<std::size_t>(vertex) >= s.graph().spaces.size()) {
    fail(ErrorKind::kDomain, "no such vertex");
  }
  if (!is_fixed_vertex(xs, vertex)) fail(ErrorKind::kDomain, "vertex is not fixed by f*");
  const GraphOfSpaces& sub = xs.subdivided->graph();
  // Spanning tree of the component of P.
  std::map<int, EdgePath> to_root;
  to_root[vertex] = EdgePath{};
  std::deque<int> queue{vertex};
  std::vector<bool> tree(xs.arcs.size(), false);
  while (!queue.empty()) {
    const int v = queue.front();
    queue.pop_front();
    for (std::size_t i = 0; i < xs.arcs.size(); ++i) {
      const XStar::Arc& a = xs.arcs[i];
      for (int dir = 0; dir < 2; ++dir) {
        const int from = dir == 0 ? a.from : a.to;
        const int to = dir == 0 ? a.to : a.from;
        if (from != v || to_root.count(to)) continue;
        const EdgePath step = dir == 0 ? a.h : reversed(a.h);
        to_root[to] = cat(sub, to_root[v], step);
        tree[i] = true;
        queue.push_back(to);
      }
    }
  }
  std::vector<EdgePath> out;
  std::vector<std::vector<int>> words;
  for (std::size_t i = 0; i < xs.arcs.size(); ++i) {
    const XStar::Arc& a = xs.arcs[i];
    if (tree[i] || !to_root.count(a.from)) continue;
    const EdgePath loop = cat(sub, cat(sub, to_root[a.from], a.h), reversed(to_root[a.to]));
    const ReducedPath r = reduce_path(sub, loop);
    if (std::holds_alternative<ZeroPath>(r)) continue;
    EdgePath gen = to_original(s, xs, std::get<EdgePath>(r));
    if (iterate_reduced(s, gen, xs.power_used) != gen) {
      fail(ErrorKind::kInternal, "generator " + to_string(s.graph(), gen) + " is not fixed");
    }
    // h need not be pi_1-injective; keep only generators not already spanned.
    if (subgroup_contains(words, gen.edges)) continue;
    words.push_back(gen.edges);
    out.push_back(std::move(gen));
  }
  return out;
}

std::vector<EdgePath> twisted_fixed_subgroup(const System& s, const XStar& xs, int vertex, const EdgePath& w) {
  const GraphOfSpaces& g = s.graph();
  g.check(w);
  const ReducedPath r = reduce_path(g, w);
  if (std::holds_alternative<ZeroPath>(r)) fail(ErrorKind::kDomain, "w must be non-trivial");
  const EdgePath& wr = std::get<EdgePath>(r);
  if (g.origin(wr.edges.front()).space != vertex || g.terminus(wr.edges.back()).space != vertex) {
    fail(ErrorKind::kDomain, "w must be a loop at the base vertex");
  }
  if (iterate_reduced(s, wr, xs.power_used) != wr) fail(ErrorKind::kDomain, "w is not fixed");
  std::vector<std::vector<int>> gens;
  for (const EdgePath& gen : fixed_subgroup_generators(s, xs, vertex)) gens.push_back(gen.edges);
  if (!subgroup_contains(gens, wr.edges)) fail(ErrorKind::kDomain, "w is not in the fixed subgroup");
  return {wr};
}

std::string to_string(FixCertificate::Kind k) {
  switch (k) {
    case FixCertificate::Kind::kVertexSpace:
      return "vertex-space";
    case FixCertificate::Kind::kInpConcatenation:
      return "inp-concatenation";
    case FixCertificate::Kind::kNotPeriodic:
      return "not-periodic";
  }
  return "";
}

FixCertificate classify_conjugacy_class(Context& ctx, const InpAnalysis& a, const ClosedPath& gamma,
                                        const LegalizeOptions& options) {
  FixCertificate c;
  const GraphOfSpaces& g = ctx.graph();
  const ClosedPath g0 = reduce_path(g, gamma);
  if (g0.in_vertex_space()) {
    c.kind = FixCertificate::Kind::kVertexSpace;
    c.loop = g0;
    c.fixed = cyclic_equal(reduce_path(g, map_path(ctx.system, g0)), g0);
    return c;
  }
  const Legalization l = legalize(ctx, a, g0, options);
  c.t = l.t;
  c.loop = std::get<ClosedPath>(l.result);
  if (l.zero) {
    c.kind = FixCertificate::Kind::kVertexSpace;
    return c;
  }
  c.pieces = l.decomposition.pieces;
  const bool periodic = !c.pieces.empty() &&
                        std::all_of(c.pieces.begin(), c.pieces.end(), [](const Piece& p) { return p.inp; });
  if (!periodic) {
    c.kind = FixCertificate::Kind::kNotPeriodic;
    return c;
  }
  c.kind = FixCertificate::Kind::kInpConcatenation;
  c.fixed = cyclic_equal(reduce_path(g, map_path(ctx.system, g0)), g0);
  if (!c.fixed) return c;
  // f carries the INP of piece i to the INP of piece i + shift.
  std::map<VEntry, int> by_entry;
  for (std::size_t r = 0; r < a.inps.size(); ++r) by_entry[a.inps[r].prolongation] = static_cast<int>(r);
  auto image_record = [&](int r) {
    const auto it = std::lower_bound(a.v.begin(), a.v.end(), a.inps[static_cast<std::size_t>(r)].prolongation);
    const std::size_t next = a.fhat[static_cast<std::size_t>(it - a.v.begin())];
    if (next == a.star()) return -1;
    const auto f = by_entry.find(a.v[next]);
    return f == by_entry.end() ? -1 : f->second;
  };
  const std::size_t q = c.pieces.size();
  for (std::size_t s = 0; s < q; ++s) {
    bool ok = true;
    for (std::size_t i = 0; i < q && ok; ++i) ok = image_record(c.pieces[i].record) == c.pieces[(i + s) % q].record;
    if (ok) {
      c.shift = static_cast<int>(s);
      break;
    }
  }
  return c;
}

}  // namespace ttgos
