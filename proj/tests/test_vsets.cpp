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
#include "ttgos/groupoid.hpp"
#include "ttgos/vsets.hpp"

using namespace ttgos;

namespace {

// "reverse(g1)|g2" in the oracle's normalization.
std::string entry_key(const GraphOfSpaces& g, const VEntry& e) {
  const std::string b1 = testing::compact(to_string(g, e.branch1));
  const std::string b2 = testing::compact(to_string(g, e.branch2));
  return oracle::normalize_pair(b1, b2);
}

std::set<std::string> library_v(Context& ctx, int t) {
  std::set<std::string> out;
  for (const VEntry& e : enumerate_v(ctx, t)) out.insert(entry_key(ctx.graph(), e));
  return out;
}

}  // namespace

TEST_CASE("V(f) of fixture A") {
  const System s = testing::fixture_a();
  Context ctx(s);
  const std::vector<VEntry> v = enumerate_v(ctx, 1);
  std::vector<std::string> paths;
  for (const VEntry& e : v) paths.push_back(testing::compact(to_string(s.graph(), e.eta())));
  std::sort(paths.begin(), paths.end());
  CHECK(paths == std::vector<std::string>{"Bc", "Be", "Ce", "abF", "abFA", "bD", "bF", "dF"});
  std::size_t longest = 0;
  for (const VEntry& e : v) longest = std::max(longest, e.length());
  CHECK(longest == 4);
}

TEST_CASE("V(f) of fixture A matches the definition") {
  const System s = testing::fixture_a();
  Context ctx(s);
  oracle::RoseMap m({{'a', "baccddeeff"}, {'b', "a"}, {'c', "ac"}, {'d', "da"}, {'e', "ae"}, {'f', "fa"}});
  CHECK(library_v(ctx, 1) == m.v_set());
}

TEST_CASE("membership witnesses") {
  const System s = testing::fixture_a();
  Context ctx(s);
  const GraphOfSpaces& g = s.graph();
  const auto e = v_membership(ctx, 1, parse_edge_path(g, "a b F A"), 1);
  REQUIRE(e.has_value());
  CHECK(e->common == 3);
  CHECK(e->reach1 == 2);
  CHECK(e->reach2 == 2);
  CHECK_FALSE(v_membership(ctx, 1, parse_edge_path(g, "a b F A A"), 1).has_value());
  CHECK_FALSE(v_membership(ctx, 1, parse_edge_path(g, "a b"), 0).has_value());
}

TEST_CASE("V(f^t) grows with t") {
  const System s = testing::fixture_a();
  Context ctx(s);
  const auto v1 = enumerate_v(ctx, 1);
  const auto v2 = enumerate_v(ctx, 2);
  for (const VEntry& e : v1) CHECK(std::binary_search(v2.begin(), v2.end(), e));
  CHECK(v2.size() >= v1.size());
}

TEST_CASE("V-set of a graph-of-spaces without illegal turns is empty") {
  const System s = testing::fixture_c();
  Context ctx(s);
  CHECK(enumerate_v(ctx, 1).empty());
  CHECK(enumerate_v(ctx, 3).empty());
}

TEST_CASE("capacity caps are enforced") {
  const System s = testing::fixture_a();
  Context ctx(s);
  VLimits tight;
  tight.max_entries = 3;
  try {
    enumerate_v(ctx, 1, tight);
    FAIL("expected a capacity error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::kCapacity);
  }
}

TEST_CASE("random roses: V(f) matches the brute-force definition") {
  std::mt19937 rng(11);
  int checked = 0;
  int nonempty = 0;
  for (int n = 0; n < 40; ++n) {
    const auto images = oracle::random_positive_automorphism(rng, 2 + n % 2, 6, 6);
    oracle::RoseMap m(images);
    if (m.expansion_exponent() == 0) continue;
    const System s = testing::load(oracle::rose_document(images));
    if (!is_surjective_on_pi1(s)) continue;
    Context ctx(s);
    CAPTURE(oracle::rose_document(images));
    const auto expected = m.v_set();
    CHECK(library_v(ctx, 1) == expected);
    ++checked;
    nonempty += !expected.empty();
  }
  CHECK(checked >= 20);
  CHECK(nonempty >= 5);
}
