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

#include "ttgos/streams.hpp"

#include <string>

namespace ttgos {

std::uint64_t sat_add(std::uint64_t a, std::uint64_t b) {
  return a > kSaturated - b ? kSaturated : a + b;
}

std::uint64_t sat_mul(std::uint64_t a, std::uint64_t b) {
  if (a == 0 || b == 0) return 0;
  return a > kSaturated / b ? kSaturated : a * b;
}

void PowerTables::ensure(int t) {
  const auto& s = *system_;
  const auto& g = s.graph();
  const int n = g.num_oriented_edges();
  if (len_.empty()) {
    len_.emplace_back(static_cast<std::size_t>(n), 1);
    lead_.emplace_back();
    trail_.emplace_back();
    for (Edge e = 0; e < n; ++e) {
      const AttachPoint o = g.origin(e);
      const AttachPoint d = g.terminus(e);
      lead_[0].push_back(trivial_path(o.space, o.vertex));
      trail_[0].push_back(trivial_path(d.space, d.vertex));
    }
  }
  while (static_cast<int>(len_.size()) <= t) {
    const int l = static_cast<int>(len_.size());
    std::vector<std::uint64_t> len(static_cast<std::size_t>(n), 0);
    std::vector<LocalPath> lead;
    std::vector<LocalPath> trail;
    for (Edge e = 0; e < n; ++e) {
      const EdgeImage& img = s.image(e);
      for (Edge x : img.path.edges) {
        len[static_cast<std::size_t>(e)] =
            sat_add(len[static_cast<std::size_t>(e)], len_[static_cast<std::size_t>(l - 1)][static_cast<std::size_t>(x)]);
      }
      lead.push_back(concat(s.map_local(img.lead, l - 1),
                            lead_[static_cast<std::size_t>(l - 1)][static_cast<std::size_t>(img.path.edges.front())]));
      trail.push_back(concat(trail_[static_cast<std::size_t>(l - 1)][static_cast<std::size_t>(img.path.edges.back())],
                             s.map_local(img.trail, l - 1)));
    }
    len_.push_back(std::move(len));
    lead_.push_back(std::move(lead));
    trail_.push_back(std::move(trail));
  }
}

std::uint64_t PowerTables::length(Edge e, int t) {
  ensure(t);
  return len_[static_cast<std::size_t>(t)][static_cast<std::size_t>(e)];
}

const LocalPath& PowerTables::lead(Edge e, int t) {
  ensure(t);
  return lead_[static_cast<std::size_t>(t)][static_cast<std::size_t>(e)];
}

const LocalPath& PowerTables::trail(Edge e, int t) {
  ensure(t);
  return trail_[static_cast<std::size_t>(t)][static_cast<std::size_t>(e)];
}

std::uint64_t PowerTables::length(const EdgePath& p, int t) {
  std::uint64_t n = 0;
  for (Edge e : p.edges) n = sat_add(n, length(e, t));
  return n;
}

// ---------------------------------------------------------------------------

ImageStream::ImageStream(PowerTables& tables, EdgePath path, int t)
    : tables_(&tables), root_(std::move(path)) {
  tables_->ensure(t);
  stack_.push_back({&root_, 0, t});
}

LocalPath ImageStream::junction(const Frame& f, std::size_t i) {
  const LocalPath& c = f.path->connectors[i];
  if (f.level == 0) return c;
  const auto& s = tables_->system();
  return concat(tables_->trail(f.path->edges[i], f.level), s.map_local(c, f.level),
                tables_->lead(f.path->edges[i + 1], f.level));
}

void ImageStream::settle() {
  Frame& f = stack_.back();
  ++f.idx;
  if (f.idx < f.path->edges.size()) pend_ = junction(f, f.idx - 1);
}

std::optional<ImageStream::Item> ImageStream::next() {
  while (!stack_.empty()) {
    Frame& f = stack_.back();
    if (f.idx >= f.path->edges.size()) {
      stack_.pop_back();
      if (!stack_.empty()) settle();
      continue;
    }
    const Edge e = f.path->edges[f.idx];
    if (f.level == 0) {
      Item it{e, std::move(pend_)};
      pend_.reset();
      settle();
      ++pos_;
      return it;
    }
    const int level = f.level - 1;
    stack_.push_back({&tables_->system().image(e).path, 0, level});
  }
  return std::nullopt;
}

void ImageStream::skip(std::uint64_t n) {
  while (n > 0 && !stack_.empty()) {
    Frame& f = stack_.back();
    if (f.idx >= f.path->edges.size()) {
      stack_.pop_back();
      if (!stack_.empty()) settle();
      continue;
    }
    const Edge e = f.path->edges[f.idx];
    const std::uint64_t len = tables_->length(e, f.level);
    if (len <= n) {
      n -= len;
      pos_ += len;
      pend_.reset();
      settle();
      continue;
    }
    const int level = f.level - 1;
    stack_.push_back({&tables_->system().image(e).path, 0, level});
  }
}

std::optional<ImageStream::Block> ImageStream::block() {
  while (!stack_.empty()) {
    Frame& f = stack_.back();
    if (f.idx < f.path->edges.size()) return Block{f.path->edges[f.idx], f.level, &pend_};
    stack_.pop_back();
    if (!stack_.empty()) settle();
  }
  return std::nullopt;
}

void ImageStream::expand() {
  const Frame& f = stack_.back();
  stack_.push_back({&tables_->system().image(f.path->edges[f.idx]).path, 0, f.level - 1});
}

std::uint64_t common_prefix(ImageStream& a, ImageStream& b) {
  std::uint64_t n = 0;
  for (;;) {
    const auto x = a.block();
    const auto y = b.block();
    if (!x || !y || *x->before != *y->before) return n;
    if (x->edge == y->edge && x->level == y->level) {
      const std::uint64_t len = a.tables().length(x->edge, x->level);
      a.skip(len);
      b.skip(len);
      n = sat_add(n, len);
      continue;
    }
    if (x->level == 0 && y->level == 0) return n;
    if (x->level >= y->level && x->level > 0) a.expand();
    if (y->level >= x->level && y->level > 0) b.expand();
  }
}

EdgePath image_power(PowerTables& tables, const EdgePath& p, int t, std::uint64_t max_length) {
  if (t == 0) return p;
  const std::uint64_t len = tables.length(p, t);
  if (len > max_length) {
    fail(ErrorKind::kCapacity,
         "image length cap (max_image_length=" + std::to_string(max_length) + ") exceeded");
  }
  EdgePath out;
  out.edges.reserve(len);
  ImageStream st(tables, p, t);
  while (auto it = st.next()) {
    if (it->before) out.connectors.push_back(std::move(*it->before));
    out.edges.push_back(it->edge);
  }
  return out;
}

Locus flip_locus(PowerTables& tables, const Locus& l) {
  const std::uint64_t len = tables.length(l.edge, l.power);
  return Locus{inverse(l.edge), len - 1 - l.occurrence, l.power};
}

std::uint64_t lift_occurrence(PowerTables& tables, const Locus& l, int power) {
  constexpr std::uint64_t kLimit = 50'000'000;
  std::uint64_t occ = l.occurrence;
  for (int q = l.power; q < power; q += l.power) {
    if (occ > kLimit) fail(ErrorKind::kCapacity, "endpoint occurrence exceeds " + std::to_string(kLimit));
    ImageStream st(tables, single_edge(l.edge), q);
    std::uint64_t offset = 0;
    for (std::uint64_t r = 0; r < occ; ++r) offset = sat_add(offset, tables.length(st.next()->edge, l.power));
    occ = sat_add(offset, l.occurrence);
  }
  return occ;
}

Backtrack backtrack(PowerTables& tables, const EdgePath& branch1, const LocalPath& tip,
                    const EdgePath& branch2, int t) {
  Backtrack r;
  r.image1 = tables.length(branch1, t);
  r.image2 = tables.length(branch2, t);
  r.before_last1 = r.image1 - tables.length(branch1.edges.back(), t);
  r.before_last2 = r.image2 - tables.length(branch2.edges.back(), t);
  const auto& s = tables.system();
  const LocalPath tau = concat(tables.lead(branch1.edges.front(), t).reversed(), s.map_local(tip, t),
                               tables.lead(branch2.edges.front(), t));
  r.tip_contracts = tau.trivial();
  if (!r.tip_contracts) return r;
  ImageStream a(tables, branch1, t);
  ImageStream b(tables, branch2, t);
  r.common = common_prefix(a, b);
  auto reach = [&](const EdgePath& br) {
    std::size_t k = 0;
    std::uint64_t acc = 0;
    while (acc < r.common && k < br.edges.size()) acc = sat_add(acc, tables.length(br.edges[k++], t));
    return k;
  };
  r.reach1 = reach(branch1);
  r.reach2 = reach(branch2);
  return r;
}

}  // namespace ttgos
