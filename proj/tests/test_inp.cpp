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

#include <doctest.h>

#include <algorithm>

#include "helpers.hpp"
#include "oracle.hpp"
#include "ttgos/context.hpp"
#include "ttgos/inp.hpp"

using namespace ttgos;

namespace {

const std::map<char, std::string> kFixtureA = {{'a', "baccddeeff"}, {'b', "a"}, {'c', "ac"},
                                               {'d', "da"},         {'e', "ae"}, {'f', "fa"}};

std::vector<oracle::RoseMap::Inp> library_inps(const GraphOfSpaces& g, const InpAnalysis& a) {
  std::vector<oracle::RoseMap::Inp> out;
  for (const InpRecord& r : a.inps) {
    const std::string b1 = testing::compact(to_string(g, r.prolongation.branch1));
    const std::string b2 = testing::compact(to_string(g, r.prolongation.branch2));
    oracle::RoseMap::Inp x;
    x.period = r.period;
    x.path = oracle::normalize_pair(b1, b2);
    const bool swapped = x.path != oracle::inv(b1) + "|" + b2;
    x.head_vertex = swapped ? r.tail.vertex : r.head.vertex;
    x.tail_vertex = swapped ? r.head.vertex : r.tail.vertex;
    out.push_back(x);
  }
  std::sort(out.begin(), out.end());
  return out;
}

void check_same(const std::vector<oracle::RoseMap::Inp>& lib, const std::vector<oracle::RoseMap::Inp>& ref) {
  REQUIRE(lib.size() == ref.size());
  for (std::size_t i = 0; i < lib.size(); ++i) {
    CAPTURE(ref[i].path);
    CHECK(lib[i].path == ref[i].path);
    CHECK(lib[i].period == ref[i].period);
    CHECK(lib[i].head_vertex == ref[i].head_vertex);
    CHECK(lib[i].tail_vertex == ref[i].tail_vertex);
  }
}

std::size_t longest_branch(const InpAnalysis& a) {
  std::size_t n = 1;
  for (const InpRecord& r : a.inps) {
    n = std::max({n, r.prolongation.branch1.length(), r.prolongation.branch2.length()});
  }
  return n;
}

std::string word_of(const GraphOfSpaces& g, const std::variant<EdgePath, ClosedPath>& p) {
  if (const auto* e = std::get_if<EdgePath>(&p)) return testing::compact(to_string(g, *e));
  return testing::compact(to_string(g, std::get<ClosedPath>(p)));
}

// Pieces of a pseudo-legal decomposition: legal pieces are legal words,
// INP pieces carry exactly one illegal turn, and junctions are legal.
void check_decomposition(const oracle::RoseMap& m, const std::string& w, const Decomposition& d) {
  REQUIRE(d.pseudo_legal);
  for (const Piece& p : d.pieces) {
    REQUIRE(p.last < w.size());
    const std::string s = w.substr(p.first, p.last - p.first + 1);
    int illegal = 0;
    for (std::size_t i = 0; i + 1 < s.size(); ++i) illegal += m.illegal(oracle::inv(s[i]), s[i + 1]);
    CHECK(illegal == (p.inp ? 1 : 0));
  }
  for (std::size_t i = 0; i + 1 < d.pieces.size(); ++i) {
    const Piece& a = d.pieces[i];
    const Piece& b = d.pieces[i + 1];
    if (a.last + 1 == b.first) CHECK_FALSE(m.illegal(oracle::inv(w[a.last]), w[b.first]));
  }
}

}  // namespace

TEST_CASE("INPs of fixture A") {
  const System s = testing::fixture_a();
  Context ctx(s);
  const InpAnalysis a = compute_inps(ctx);
  CHECK(a.bounds.t_hat == 5);
  CHECK(a.t_plus == 2);
  CHECK(a.t_star == 1);
  CHECK(a.t4 == 3);
  std::vector<std::string> paths;
  for (const InpRecord& r : a.inps) {
    paths.push_back(to_string(s.graph(), r.prolongation.eta()));
    CHECK(r.period == 1);
    CHECK(r.verified);
  }
  CHECK(paths == std::vector<std::string>{"A B c", "A B e", "C e", "d F"});
  // A B c ends at the fixed point inside a coming from its copy at position 1 of f(a).
  REQUIRE(a.inps.size() == 4);
  CHECK_FALSE(a.inps[0].head.vertex);
  CHECK(a.inps[0].head.locus.edge == 0);
  CHECK(a.inps[0].head.locus.occurrence == 1);
  CHECK(a.inps[0].tail.vertex);
  CHECK(a.inps[2].head.vertex);
  CHECK(a.inps[2].tail.vertex);
}

TEST_CASE("INPs of fixture A match the definition") {
  const System s = testing::fixture_a();
  Context ctx(s);
  const InpAnalysis a = compute_inps(ctx);
  const oracle::RoseMap m(kFixtureA);
  check_same(library_inps(s.graph(), a), m.inps(static_cast<int>(longest_branch(a)) + 2, 4));
}

TEST_CASE("the self-map of V carries each INP around its period") {
  const System s = testing::fixture_a();
  Context ctx(s);
  const InpAnalysis a = compute_inps(ctx);
  REQUIRE(a.fhat.size() == a.v.size() + 1);
  CHECK(a.fhat[a.star()] == a.star());
  for (const InpRecord& r : a.inps) {
    const auto it = std::lower_bound(a.v.begin(), a.v.end(), r.prolongation);
    REQUIRE(it != a.v.end());
    REQUIRE(*it == r.prolongation);
    std::size_t i = static_cast<std::size_t>(it - a.v.begin());
    const std::size_t start = i;
    for (int k = 0; k < r.period; ++k) i = a.fhat[i];
    CHECK(i == start);
    CHECK(a.period[start] == r.period);
  }
  // Every orbit reaches a cycle or the star within t_plus steps.
  for (std::size_t i = 0; i < a.fhat.size(); ++i) CHECK(a.tail[i] <= a.t_plus);
}

TEST_CASE("a graph-of-spaces without illegal turns has no INPs") {
  const System s = testing::fixture_c();
  Context ctx(s);
  const InpAnalysis a = compute_inps(ctx);
  CHECK(a.inps.empty());
  CHECK(a.v.empty());
  CHECK(a.bounds.t_hat == 1);
}

TEST_CASE("legalization of fixture A paths") {
  const System s = testing::fixture_a();
  const GraphOfSpaces& g = s.graph();
  Context ctx(s);
  const InpAnalysis a = compute_inps(ctx);
  const oracle::RoseMap m(kFixtureA);
  std::mt19937 rng(3);
  const std::string letters = m.letters();
  for (int n = 0; n < 60; ++n) {
    std::string w;
    while (w.size() < 2 + n % 5) {
      const char c = letters[rng() % letters.size()];
      if (w.empty() || c != oracle::inv(w.back())) w.push_back(c);
    }
    CAPTURE(w);
    const EdgePath gamma = parse_edge_path(g, testing::spaced(w));
    const Legalization l = legalize(ctx, a, gamma);
    CHECK(l.t <= static_cast<int>(l.cap));
    const std::string expected = oracle::reduce(m.power(w, l.t));
    if (l.zero) {
      CHECK(expected.empty());
      continue;
    }
    const std::string got = word_of(g, l.result);
    CHECK(got == expected);
    check_decomposition(m, got, l.decomposition);
    REQUIRE(l.ilt_trace.size() == static_cast<std::size_t>(l.t) + 1);
    for (std::size_t i = 0; i + 1 < l.ilt_trace.size(); ++i) CHECK(l.ilt_trace[i + 1] <= l.ilt_trace[i]);
    const DecayReport d = decay_check(ctx, a, gamma);
    CHECK(d.holds);
    CHECK(d.lhs <= d.rhs);
  }
}

TEST_CASE("pseudo-legal paths need no iteration") {
  const System s = testing::fixture_a();
  Context ctx(s);
  const InpAnalysis a = compute_inps(ctx);
  for (const char* text : {"a b c", "C e", "a C e a"}) {
    CAPTURE(text);
    const Legalization l = legalize(ctx, a, parse_edge_path(s.graph(), text));
    CHECK(l.t == 0);
    CHECK(l.decomposition.pseudo_legal);
  }
}

TEST_CASE("random roses: INPs match the definition") {
  std::mt19937 rng(17);
  int checked = 0, with_inps = 0;
  for (int n = 0; n < 30; ++n) {
    const auto images = oracle::random_positive_automorphism(rng, 2 + n % 2, 6, 6);
    const oracle::RoseMap m(images);
    if (m.expansion_exponent() == 0) continue;
    const System s = testing::load(oracle::rose_document(images));
    CAPTURE(oracle::rose_document(images));
    Context ctx(s);
    const InpAnalysis a = compute_inps(ctx);
    for (const InpRecord& r : a.inps) CHECK(r.verified);
    check_same(library_inps(s.graph(), a), m.inps(static_cast<int>(longest_branch(a)) + 2, 6));
    ++checked;
    with_inps += !a.inps.empty();
  }
  CHECK(checked >= 20);
  CHECK(with_inps >= 5);
}

TEST_CASE("an INP longer than the computed C_1") {
  // [f(a b A B)] = a b A B with vertex ends, while C_1 = C' / (lambda_min - 1) = 3.
  const std::map<char, std::string> images = {{'a', "aba"}, {'b', "ba"}, {'c', "aacba"}};
  const System s = testing::load(oracle::rose_document(images));
  Context ctx(s);
  const InpAnalysis a = compute_inps(ctx);
  CHECK(to_string(a.bounds.C_1) == "3");
  CHECK(oracle::reduce(oracle::RoseMap(images).image("abAB")) == "abAB");
  bool found = false;
  for (const InpRecord& r : a.inps) {
    const std::string eta = testing::compact(to_string(s.graph(), r.prolongation.eta()));
    if (eta == "abAB" || eta == oracle::inv(std::string("abAB"))) {
      found = true;
      CHECK(r.verified);
      CHECK(r.period == 1);
      CHECK(r.head.vertex);
      CHECK(r.tail.vertex);
      CHECK(Rational(r.prolongation.length()) > a.bounds.C_1);
    }
  }
  CHECK(found);
}
