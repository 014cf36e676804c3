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

#include <cctype>
#include <cmath>

#include "helpers.hpp"
#include "oracle.hpp"
#include "ttgos/absolute.hpp"
#include "ttgos/context.hpp"
#include "ttgos/turns.hpp"

using namespace ttgos;

namespace {

using Matrix = std::vector<std::vector<std::uint64_t>>;

Matrix count_matrix(const std::map<char, std::string>& images) {
  const std::size_t n = images.size();
  Matrix m(n, std::vector<std::uint64_t>(n, 0));
  for (const auto& [c, w] : images) {
    for (char x : w) ++m[static_cast<std::size_t>(std::tolower(x) - 'a')][static_cast<std::size_t>(c - 'a')];
  }
  return m;
}

bool positive_power(const Matrix& m, int k) {
  const std::size_t n = m.size();
  std::vector<std::vector<bool>> p(n, std::vector<bool>(n, false));
  for (std::size_t i = 0; i < n; ++i) p[i][i] = true;
  for (int s = 0; s < k; ++s) {
    std::vector<std::vector<bool>> q(n, std::vector<bool>(n, false));
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t l = 0; l < n; ++l)
        if (p[i][l])
          for (std::size_t j = 0; j < n; ++j) q[i][j] = q[i][j] || m[l][j] != 0;
    p = q;
  }
  for (const auto& row : p)
    for (bool b : row)
      if (!b) return false;
  return true;
}

// |f^t(c)| for every letter, as doubles.
std::map<char, double> lengths(const std::map<char, std::string>& images, int t) {
  std::map<char, double> len;
  for (const auto& [c, _] : images) len[c] = 1;
  for (int s = 0; s < t; ++s) {
    std::map<char, double> next;
    for (const auto& [c, w] : images) {
      double n = 0;
      for (char x : w) n += len[static_cast<char>(std::tolower(x))];
      next[c] = n;
    }
    len = next;
  }
  return len;
}

}  // namespace

TEST_CASE("transition matrix of fixture A") {
  const System s = testing::fixture_a();
  const TransitionAnalysis t = transition_analysis(s);
  std::vector<std::uint64_t> col_a, col_b;
  for (const auto& row : t.matrix) {
    col_a.push_back(row[0]);
    col_b.push_back(row[1]);
  }
  CHECK(col_a == std::vector<std::uint64_t>{1, 1, 2, 2, 2, 2});
  CHECK(col_b == std::vector<std::uint64_t>{1, 0, 0, 0, 0, 0});
  CHECK(t.primitive);
  CHECK(positive_power(t.matrix, t.witness));
  CHECK_FALSE(positive_power(t.matrix, t.witness - 1));
  CHECK(t.num_scc == 1);
  for (bool e : t.exponential) CHECK(e);
}

TEST_CASE("identity map") {
  const System s = testing::load(R"({"rose": {"a": "a", "b": "b"}})");
  const TransitionAnalysis t = transition_analysis(s);
  CHECK_FALSE(t.primitive);
  for (bool e : t.exponential) CHECK_FALSE(e);
  try {
    to_graph_of_spaces(s);
    FAIL("expected a domain error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::kDomain);
  }
}

TEST_CASE("collapsing the polynomial part") {
  const System s = testing::load(R"({"rose": {"a": "a", "b": "bab"}})");
  const TransitionAnalysis t = transition_analysis(s);
  CHECK_FALSE(t.exponential[0]);
  CHECK(t.exponential[1]);
  const System gos = to_graph_of_spaces(s);
  const GraphOfSpaces& g = gos.graph();
  CHECK(g.spaces.size() == 1);
  CHECK(g.num_oriented_edges() == 2);
  CHECK(to_string(g, gos.morphism().edge_images[0]) == "b {a} b");
  CHECK(validate_system(gos).ok());
  Context ctx(gos);
  const MapProfile p = map_profile(gos, ctx.closure);
  CHECK(p.train_track);
  CHECK(p.expanding);
}

TEST_CASE("all-exponential maps keep every edge on top") {
  const System s = testing::fixture_a();
  const System gos = to_graph_of_spaces(s);
  CHECK(gos.graph().num_oriented_edges() == 12);
  for (const auto& sp : gos.graph().spaces) CHECK_FALSE(sp.essential());
}

TEST_CASE("Whitehead graphs") {
  SUBCASE("fixture A is connected") {
    const auto w = whitehead_graphs(testing::fixture_a());
    REQUIRE(w.size() == 1);
    CHECK(w[0].connected);
    CHECK(w[0].directions.size() == 12);
  }
  SUBCASE("an isolated direction disconnects") {
    const auto w = whitehead_graphs(testing::load(R"({"rose": {"a": "ab", "b": "a", "c": "c"}})"));
    REQUIRE(w.size() == 1);
    CHECK_FALSE(w[0].connected);
  }
}

TEST_CASE("random roses: matrix, primitivity and growth classes") {
  std::mt19937 rng(29);
  for (int n = 0; n < 80; ++n) {
    const int rank = 2 + n % 2;
    const auto images = oracle::random_positive_automorphism(rng, rank, n % 7, 8);
    const System s = testing::load(oracle::rose_document(images));
    CAPTURE(oracle::rose_document(images));
    const TransitionAnalysis t = transition_analysis(s);
    const Matrix m = count_matrix(images);
    CHECK(t.matrix == m);
    const int bound = (rank - 1) * (rank - 1) + 1;
    int witness = 0;
    for (int k = 1; k <= bound && witness == 0; ++k) {
      if (positive_power(m, k)) witness = k;
    }
    CHECK(t.primitive == (witness != 0));
    if (t.primitive) CHECK(t.witness == witness);
    // Exponential edges double well within 40 steps; polynomial ones stay
    // below a small power of t.
    const auto l40 = lengths(images, 40);
    const auto l80 = lengths(images, 80);
    for (const auto& [c, _] : images) {
      const double ratio = l80.at(c) / l40.at(c);
      CHECK(t.exponential[static_cast<std::size_t>(c - 'a')] == (ratio > 1000.0));
    }
  }
}
