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

#include "ttgos/inp.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace ttgos {

namespace {

Edge first_edge(const System& s, Edge e, int t) {
  for (int k = 0; k < t; ++k) e = s.image(e).path.edges.front();
  return e;
}

LocalPath tip_image(Context& ctx, const PseudoInp& p, int t) {
  return concat(ctx.tables.lead(p.branch1.edges.front(), t).reversed(),
                ctx.system.map_local(p.tip, t), ctx.tables.lead(p.branch2.edges.front(), t));
}

// Whether the tip of [f^t(eta)] is legal, or a branch is used up.
bool tip_legal_at(Context& ctx, const PseudoInp& p, int t) {
  const Backtrack b = backtrack(ctx.tables, p.branch1, p.tip, p.branch2, t);
  const LocalPath tau = tip_image(ctx, p, t);
  if (!b.tip_contracts) {
    const Turn u{inverse(first_edge(ctx.system, p.branch1.edges.front(), t)), tau,
                 first_edge(ctx.system, p.branch2.edges.front(), t)};
    return !ctx.closure.is_illegal(u);
  }
  if (b.consumed1() || b.consumed2()) return true;
  ImageStream a(ctx.tables, p.branch1, t);
  ImageStream c(ctx.tables, p.branch2, t);
  a.skip(b.common);
  c.skip(b.common);
  const auto x = a.next();
  const auto y = c.next();
  if (!x || !y) fail(ErrorKind::kInternal, "image stream ended before the cancellation point");
  LocalPath chi = tau;
  if (b.common > 0) chi = concat(x->before->reversed(), *y->before);
  return !ctx.closure.is_illegal(Turn{inverse(x->edge), chi, y->edge});
}

struct TipImage {
  bool legal = false;
  std::uint64_t common = 0;
  std::int64_t before_last1 = 0;
  std::int64_t before_last2 = 0;
  PseudoInp next;
};

// [f^t(eta)] split at its (new) tip, materialized.
TipImage image_at_tip(Context& ctx, const PseudoInp& p, int t, std::uint64_t max_length) {
  TipImage r;
  const Backtrack b = backtrack(ctx.tables, p.branch1, p.tip, p.branch2, t);
  r.before_last1 = static_cast<std::int64_t>(b.before_last1);
  r.before_last2 = static_cast<std::int64_t>(b.before_last2);
  if (b.tip_contracts && (b.consumed1() || b.consumed2())) {
    r.legal = true;
    return r;
  }
  const EdgePath f1 = image_power(ctx.tables, p.branch1, t, max_length);
  const EdgePath f2 = image_power(ctx.tables, p.branch2, t, max_length);
  const std::size_t l = b.tip_contracts ? static_cast<std::size_t>(b.common) : 0;
  r.common = l;
  LocalPath chi = tip_image(ctx, p, t);
  if (l > 0) chi = concat(f1.connectors[l - 1].reversed(), f2.connectors[l - 1]);
  r.next.branch1 = subpath(f1, l, f1.length() - l);
  r.next.branch2 = subpath(f2, l, f2.length() - l);
  r.next.tip = chi;
  r.legal = !ctx.closure.is_illegal(
      Turn{inverse(r.next.branch1.edges.front()), chi, r.next.branch2.edges.front()});
  return r;
}

}  // namespace

PseudoInp make_pseudo_inp(const Context& ctx, const EdgePath& eta, std::size_t tip_index) {
  ctx.graph().check(eta);
  const VEntry e = split_at(eta, tip_index);
  if (!ctx.closure.legal(e.branch1) || !ctx.closure.legal(e.branch2)) {
    fail(ErrorKind::kDomain, "pseudo-INP branches must be legal");
  }
  if (!ctx.closure.is_illegal(turn_at(eta, tip_index))) {
    fail(ErrorKind::kDomain, "tip turn is legal; nothing backtracks");
  }
  return PseudoInp{e.branch1, e.tip, e.branch2};
}

BacktrackCore backtracking_core(Context& ctx, const PseudoInp& eta, int t) {
  if (t < 1) fail(ErrorKind::kDomain, "backtracking core needs t >= 1");
  const Turn at_tip{inverse(eta.branch1.edges.front()), eta.tip, eta.branch2.edges.front()};
  if (!ctx.closure.is_illegal(at_tip)) fail(ErrorKind::kDomain, "tip turn is legal; nothing backtracks");
  BacktrackCore r;
  const Backtrack b = backtrack(ctx.tables, eta.branch1, eta.tip, eta.branch2, t);
  r.legalized = tip_legal_at(ctx, eta, t);
  if (!b.tip_contracts || b.common == 0) return r;
  r.common = b.common;
  const EdgePath h1 = subpath(eta.branch1, 0, b.reach1);
  const EdgePath h2 = subpath(eta.branch2, 0, b.reach2);
  r.path.core = join(reversed(h1), eta.tip, h2);
  r.path.head_trimmed = ctx.tables.length(h1, t) > b.common;
  r.path.tail_trimmed = ctx.tables.length(h2, t) > b.common;
  return r;
}

Prolongation core_prolongation(Context& ctx, const BoundsReport& bounds, const PseudoInp& eta) {
  const int th = std::max(bounds.t_hat, 1);
  for (int t = 1; t <= th; ++t) {
    if (tip_legal_at(ctx, eta, t)) return LegalMarker{t};
  }
  const Backtrack b = backtrack(ctx.tables, eta.branch1, eta.tip, eta.branch2, th);
  if (!b.tip_contracts || b.reach1 == 0 || b.reach2 == 0) {
    fail(ErrorKind::kInternal, "illegal tip did not backtrack by stage t_hat");
  }
  VEntry e{subpath(eta.branch1, 0, b.reach1), eta.tip, subpath(eta.branch2, 0, b.reach2),
           b.common, b.reach1, b.reach2};
  return e;
}

std::optional<PseudoInp> reduced_image(Context& ctx, const VEntry& e) {
  const TipImage r = image_at_tip(ctx, PseudoInp{e.branch1, e.tip, e.branch2}, 1, UINT64_MAX);
  if (r.legal) return std::nullopt;
  return r.next;
}

InpRecord verify_inp(Context& ctx, const VEntry& e, int period, std::uint64_t max_image_length) {
  InpRecord rec;
  rec.prolongation = e;
  rec.period = period;
  const TipImage r = image_at_tip(ctx, PseudoInp{e.branch1, e.tip, e.branch2}, period, max_image_length);
  if (r.legal || r.next.tip != e.tip) return rec;
  auto end_of = [&](const EdgePath& b, const EdgePath& j, std::int64_t before_last,
                    InpEnd& out) -> bool {
    if (!has_prefix(j, b)) return false;
    const Edge last = b.edges.back();
    const auto len = static_cast<std::int64_t>(ctx.tables.length(last, period));
    const auto m = static_cast<std::int64_t>(b.length());
    const std::int64_t occ = (m - 1) - (before_last - static_cast<std::int64_t>(r.common));
    if (occ == len - 1) {
      out.vertex = true;
      return true;
    }
    if (occ < 1 || occ > len - 2) return false;
    out.vertex = false;
    out.locus = Locus{last, static_cast<std::uint64_t>(occ), period};
    return true;
  };
  rec.verified = end_of(e.branch1, r.next.branch1, r.before_last1, rec.head) &&
                 end_of(e.branch2, r.next.branch2, r.before_last2, rec.tail);
  return rec;
}

namespace {

// Tail length and period of every node of a self-map of {0..n-1}.
void orbit_data(const std::vector<std::size_t>& next, std::vector<int>& tail, std::vector<int>& period) {
  const std::size_t n = next.size();
  tail.assign(n, -1);
  period.assign(n, 0);
  for (std::size_t s = 0; s < n; ++s) {
    if (tail[s] >= 0) continue;
    std::map<std::size_t, int> seen;
    std::vector<std::size_t> walk;
    std::size_t x = s;
    while (tail[x] < 0 && !seen.count(x)) {
      seen[x] = static_cast<int>(walk.size());
      walk.push_back(x);
      x = next[x];
    }
    std::size_t stop = walk.size();
    if (tail[x] < 0) {
      // A new cycle starting at walk[seen[x]].
      const auto c = static_cast<std::size_t>(seen[x]);
      const int p = static_cast<int>(walk.size() - c);
      for (std::size_t i = c; i < walk.size(); ++i) {
        tail[walk[i]] = 0;
        period[walk[i]] = p;
      }
      stop = c;
    }
    for (std::size_t i = stop; i-- > 0;) {
      const std::size_t y = next[walk[i]];
      tail[walk[i]] = tail[y] + 1;
      period[walk[i]] = period[y];
    }
  }
}

struct Oriented {
  EdgePath eta;
  std::size_t tip = 0;
};

std::vector<Oriented> orientations(const std::vector<VEntry>& v) {
  std::vector<Oriented> out;
  for (const VEntry& e : v) {
    out.push_back({e.eta(), e.tip_index()});
    VEntry r{e.branch2, e.tip.reversed(), e.branch1};
    out.push_back({r.eta(), r.tip_index()});
  }
  return out;
}

// Paths made of two oriented entries sharing k >= 1 edges, with distinct tips.
std::set<EdgePath> overlapping_unions(const std::vector<VEntry>& v) {
  const auto all = orientations(v);
  std::set<EdgePath> out;
  for (const Oriented& a : all) {
    const std::size_t na = a.eta.length();
    for (const Oriented& b : all) {
      const std::size_t nb = b.eta.length();
      for (std::size_t k = 1; k < std::min(na, nb); ++k) {
        const std::size_t off = na - k;
        if (off + b.tip <= a.tip) continue;
        bool match = true;
        for (std::size_t j = 0; j < k && match; ++j) {
          match = a.eta.edges[off + j] == b.eta.edges[j];
          if (match && j + 1 < k) match = a.eta.connectors[off + j] == b.eta.connectors[j];
        }
        if (!match) continue;
        EdgePath u = a.eta;
        for (std::size_t j = k; j < nb; ++j) {
          u.connectors.push_back(b.eta.connectors[j - 1]);
          u.edges.push_back(b.eta.edges[j]);
        }
        EdgePath r = reversed(u);
        out.insert(std::min(u, r));
      }
    }
  }
  return out;
}

}  // namespace

InpAnalysis compute_inps(Context& ctx, const InpOptions& options) {
  InpAnalysis a;
  a.bounds = compute_bounds(ctx);
  const int th = a.bounds.t_hat;
  a.v = enumerate_v(ctx, th, options.limits);
  std::map<VEntry, std::size_t> index;
  for (std::size_t i = 0; i < a.v.size(); ++i) index.emplace(a.v[i], i);

  const std::size_t n = a.v.size();
  a.fhat.assign(n + 1, n);
  for (std::size_t i = 0; i < n; ++i) {
    const auto img = reduced_image(ctx, a.v[i]);
    if (!img) continue;
    const Prolongation pr = core_prolongation(ctx, a.bounds, *img);
    if (std::holds_alternative<LegalMarker>(pr)) continue;
    const VEntry c = canonical(std::get<VEntry>(pr));
    auto it = index.find(c);
    if (it == index.end()) {
      fail(ErrorKind::kInternal, "f-hat image " + to_string(ctx.graph(), c) + " of " +
                                     to_string(ctx.graph(), a.v[i]) + " is not in V(f^" +
                                     std::to_string(th) + ")");
    }
    a.fhat[i] = it->second;
  }
  orbit_data(a.fhat, a.tail, a.period);

  for (std::size_t i = 0; i <= n; ++i) a.t_plus = std::max(a.t_plus, a.tail[i] + a.period[i]);

  for (std::size_t i = 0; i < n; ++i) {
    if (a.tail[i] != 0) continue;
    // An end inside an edge can need a multiple of the f-hat period.
    InpRecord rec;
    rec.prolongation = a.v[i];
    rec.period = a.period[i];
    for (int k = 1; k <= options.max_period_multiple && !rec.verified; ++k) {
      try {
        rec = verify_inp(ctx, a.v[i], k * a.period[i], options.max_image_length);
      } catch (const Error& err) {
        if (err.kind() != ErrorKind::kCapacity) throw;
        rec.prolongation = a.v[i];
        rec.period = a.period[i];
        a.diagnostics.push_back("verification of " + to_string(ctx.graph(), a.v[i]) + ": " + err.what());
        break;
      }
    }
    if (!rec.verified) rec.period = a.period[i];
    if (!rec.verified) {
      a.diagnostics.push_back("periodic entry " + to_string(ctx.graph(), a.v[i]) + " failed alignment");
    }
    a.inps.push_back(std::move(rec));
  }

  // Overlapping unions of two entries: the longest time to full legality.
  const std::uint64_t cap = 2 * (static_cast<std::uint64_t>(n) + 1 + static_cast<std::uint64_t>(a.t_plus)) +
                            static_cast<std::uint64_t>(a.t_plus);
  LegalizeOptions lo;
  lo.max_length = options.max_image_length;
  lo.max_iterations = cap;
  for (const EdgePath& u : overlapping_unions(a.v)) {
    try {
      const Legalization l = legalize(ctx, a, u, lo);
      const bool all_legal = std::none_of(l.decomposition.pieces.begin(), l.decomposition.pieces.end(),
                                          [](const Piece& p) { return p.inp; });
      if (all_legal) a.t_star = std::max(a.t_star, l.t);
    } catch (const Error& err) {
      if (err.kind() != ErrorKind::kCapacity && err.kind() != ErrorKind::kInternal) throw;
      a.diagnostics.push_back("union " + to_string(ctx.graph(), u) + ": " + err.what());
    }
  }
  a.t4 = a.t_star + a.t_plus;
  return a;
}

}  // namespace ttgos
