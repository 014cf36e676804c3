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

#include "helpers.hpp"
#include "oracle.hpp"
#include "ttgos/context.hpp"
#include "ttgos/fixed.hpp"

using namespace ttgos;

namespace {

const std::map<char, std::string> kFixtureA = {{'a', "baccddeeff"}, {'b', "a"}, {'c', "ac"},
                                               {'d', "da"},         {'e', "ae"}, {'f', "fa"}};

std::string reduced_text(const GraphOfSpaces& g, const EdgePath& p) {
  const ReducedPath r = reduce_path(g, p);
  return std::holds_alternative<ZeroPath>(r) ? "" : to_string(g, std::get<EdgePath>(r));
}

// h(f*(arc)) == [g(h(arc))] for every arc of X*.
void check_star_map(const XStar& xs) {
  const System& sub = *xs.subdivided;
  REQUIRE(xs.star_map.size() == xs.arcs.size());
  for (std::size_t i = 0; i < xs.arcs.size(); ++i) {
    CAPTURE(xs.arcs[i].name);
    const auto j = static_cast<std::size_t>(xs.star_map[i]);
    REQUIRE(j < xs.arcs.size());
    CHECK(reduced_text(sub.graph(), map_path(sub, xs.arcs[i].h)) == to_string(sub.graph(), xs.arcs[j].h));
  }
}

}  // namespace

TEST_CASE("X* of fixture A") {
  const System s = testing::fixture_a();
  const XStar xs = build_xstar(s);
  CHECK(xs.power_used == 1);
  REQUIRE(xs.subdivisions.size() == 1);
  CHECK(xs.subdivisions[0].edge == "a");
  CHECK(xs.subdivisions[0].occurrences == std::vector<std::uint64_t>{1});
  std::vector<std::string> names;
  for (const XStar::Arc& a : xs.arcs) names.push_back(a.name);
  CHECK(names == std::vector<std::string>{"<A B c>", "<A B e>", "<C e>", "<d F>"});
  CHECK(xs.diagnostics.empty());
  check_star_map(xs);
  CHECK(validate_system(*xs.subdivided).ok());
}

TEST_CASE("subdivision preserves the map") {
  const System s = testing::fixture_a();
  const XStar xs = build_xstar(s);
  const System& sub = *xs.subdivided;
  const EdgePath split = parse_edge_path(sub.graph(), "a_1 a_2");
  const EdgePath back = to_original(s, xs, map_path(sub, split));
  CHECK(to_string(s.graph(), back) == "b a c c d d e e f f");
  // The split point is fixed: a_1 -> b a_1 and a_2 -> a_2 c c d d e e f f.
  CHECK(to_string(sub.graph(), map_path(sub, parse_edge_path(sub.graph(), "a_1"))) == "b a_1");
}

TEST_CASE("fixed subgroup of fixture A") {
  const System s = testing::fixture_a();
  const XStar xs = build_xstar(s);
  const auto gens = fixed_subgroup_generators(s, xs, 0);
  std::vector<std::string> words;
  for (const EdgePath& g : gens) words.push_back(to_string(s.graph(), g));
  CHECK(words == std::vector<std::string>{"C e", "d F"});
  const oracle::RoseMap m(kFixtureA);
  for (const std::string& w : words) CHECK(oracle::reduce(m.image(testing::compact(w))) == testing::compact(w));
}

TEST_CASE("fixed subgroup of a map with a fixed loop") {
  const System s = testing::load(R"({"rose": {"a": "a", "b": "bab"}})");
  const XStar xs = build_xstar(s);
  const auto gens = fixed_subgroup_generators(s, xs, 0);
  REQUIRE(gens.size() == 1);
  CHECK(to_string(s.graph(), gens[0]) == "a");
}

TEST_CASE("twisted lifts need a fixed element") {
  const System s = testing::fixture_a();
  const XStar xs = build_xstar(s);
  const auto w = twisted_fixed_subgroup(s, xs, 0, parse_edge_path(s.graph(), "C e d F"));
  REQUIRE(w.size() == 1);
  CHECK(to_string(s.graph(), w[0]) == "C e d F");
  CHECK_THROWS_AS(twisted_fixed_subgroup(s, xs, 0, parse_edge_path(s.graph(), "a b")), Error);
}

TEST_CASE("conjugacy classes of fixture A") {
  const System s = testing::fixture_a();
  const GraphOfSpaces& g = s.graph();
  Context ctx(s);
  const InpAnalysis a = compute_inps(ctx);
  SUBCASE("C e is fixed") {
    const FixCertificate c = classify_conjugacy_class(ctx, a, parse_closed_path(g, "C e"));
    CHECK(c.kind == FixCertificate::Kind::kInpConcatenation);
    CHECK(c.fixed);
    CHECK(c.shift == 0);
    CHECK(c.pieces.size() == 1);
  }
  SUBCASE("C e d F is fixed") {
    const FixCertificate c = classify_conjugacy_class(ctx, a, parse_closed_path(g, "C e d F"));
    CHECK(c.kind == FixCertificate::Kind::kInpConcatenation);
    CHECK(c.fixed);
    CHECK(c.pieces.size() == 2);
  }
  SUBCASE("a is not periodic") {
    const FixCertificate c = classify_conjugacy_class(ctx, a, parse_closed_path(g, "a"));
    CHECK(c.kind == FixCertificate::Kind::kNotPeriodic);
    CHECK_FALSE(c.fixed);
  }
  SUBCASE("a conjugate of C e is fixed") {
    const FixCertificate c = classify_conjugacy_class(ctx, a, parse_closed_path(g, "b C e B"));
    CHECK(c.fixed);
  }
}

TEST_CASE("conjugacy classes in a vertex space") {
  const System s = testing::fixture_c();
  Context ctx(s);
  const InpAnalysis a = compute_inps(ctx);
  const FixCertificate c = classify_conjugacy_class(ctx, a, parse_closed_path(s.graph(), "{v: x}"));
  CHECK(c.kind == FixCertificate::Kind::kVertexSpace);
  CHECK(c.fixed);
  const FixCertificate d = classify_conjugacy_class(ctx, a, parse_closed_path(s.graph(), "b"));
  CHECK(d.kind == FixCertificate::Kind::kNotPeriodic);
}

TEST_CASE("random roses: fixed subgroup generators are fixed") {
  std::mt19937 rng(31);
  int with_generators = 0, built = 0, capped = 0;
  for (int n = 0; n < 30; ++n) {
    const auto images = oracle::random_positive_automorphism(rng, 2 + n % 2, 6, 6);
    const oracle::RoseMap m(images);
    if (m.expansion_exponent() == 0) continue;
    const System s = testing::load(oracle::rose_document(images));
    CAPTURE(oracle::rose_document(images));
    XStar xs;
    try {
      xs = build_xstar(s);
    } catch (const Error& e) {
      // X* needs f^p for p the lcm of all INP periods; images can outgrow the cap.
      REQUIRE(e.kind() == ErrorKind::kCapacity);
      ++capped;
      continue;
    }
    ++built;
    check_star_map(xs);
    const auto gens = fixed_subgroup_generators(s, xs, 0);
    with_generators += !gens.empty();
    Context ctx(s);
    const InpAnalysis a = compute_inps(ctx);
    for (const EdgePath& gen : gens) {
      const std::string w = testing::compact(to_string(s.graph(), gen));
      CHECK(oracle::reduce(m.power(w, xs.power_used)) == w);
      if (xs.power_used == 1) {
        const FixCertificate c = classify_conjugacy_class(ctx, a, parse_closed_path(s.graph(), testing::spaced(w)));
        CHECK(c.fixed);
      }
    }
  }
  MESSAGE("X* built for " << built << " maps, " << capped << " over the image cap");
  CHECK(built >= 3 * capped);
  CHECK(with_generators >= 3);
}

TEST_CASE("X* for a chosen power keeps the INPs that power fixes") {
  // Both INPs of this map have period 2.
  const System s = testing::load(R"({"rose": {"a": "babaa", "b": "baa"}})");
  const oracle::RoseMap m({{'a', "babaa"}, {'b', "baa"}});
  const XStar least = build_xstar(s);
  CHECK(least.power_used == 2);
  CHECK(least.arcs.size() == 2);
  check_star_map(least);
  for (const EdgePath& gen : fixed_subgroup_generators(s, least, 0)) {
    const std::string w = testing::compact(to_string(s.graph(), gen));
    CHECK(oracle::reduce(m.power(w, 2)) == w);
  }
  XStarOptions o;
  o.power = 1;
  const XStar one = build_xstar(s, o);
  CHECK(one.power_used == 1);
  CHECK(one.arcs.empty());
  CHECK(one.subdivisions.empty());
  CHECK(fixed_subgroup_generators(s, one, 0).empty());
}
