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

using namespace ttgos;

namespace {

std::string error_of(const std::string& doc) {
  try {
    parse_document(doc);
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::kStructural);
    return e.what();
  }
  return "";
}

std::vector<std::string> images(const System& s) {
  std::vector<std::string> out;
  for (const EdgeImage& img : s.morphism().edge_images) out.push_back(to_string(s.graph(), img));
  return out;
}

}  // namespace

TEST_CASE("errors point into the document") {
  CHECK(error_of(R"({"rose": {"a": "q"}})").rfind("/rose/a:", 0) == 0);
  CHECK(error_of(R"({"rose": 5})").rfind("/rose:", 0) == 0);
  CHECK(error_of(R"([1, 2])").rfind("document:", 0) == 0);
  CHECK(error_of(R"({"vertex_spaces": {"v": {}}})").find("top_edges") != std::string::npos);
  CHECK(error_of(R"({"vertex_spaces": {"v": {}}, "top_edges": [{"name": "b", "from": "v:zz", "to": "v"}],
                     "morphism": {"vertex_maps": {"v": "v"}, "edge_maps": {"b": "b"}}})")
            .rfind("/top_edges/0/from:", 0) == 0);
  CHECK(error_of(R"({"rose": {"a": "ab", "b": "a"}, "options": {"max_v_entries": "x"}})")
            .rfind("/options/max_v_entries:", 0) == 0);
  CHECK(error_of(R"({"absolute": {"vertices": ["p"], "edges": {"a": ["p", "p"]}, "images": {}}})")
            .rfind("/absolute/images:", 0) == 0);
  CHECK_FALSE(error_of("not json").empty());
}

TEST_CASE("rose, absolute and full forms agree") {
  const System rose = testing::fixture_a();
  const System absolute = testing::load(R"({"absolute": {
      "vertices": ["v"],
      "edges": {"a": ["v", "v"], "b": ["v", "v"], "c": ["v", "v"], "d": ["v", "v"], "e": ["v", "v"], "f": ["v", "v"]},
      "images": {"a": "b a c c d d e e f f", "b": "a", "c": "a c", "d": "d a", "e": "a e", "f": "f a"}}})");
  CHECK(images(rose) == images(absolute));
  const System full = testing::load(to_document(rose));
  CHECK(images(rose) == images(full));
  CHECK(to_document(full) == to_document(rose));
}

TEST_CASE("absolute maps infer vertex images") {
  const System s = testing::load(R"({"absolute": {
      "vertices": ["p", "q"],
      "edges": {"a": ["p", "q"], "b": ["q", "p"], "c": ["p", "p"]},
      "images": {"a": "a b a", "b": "b", "c": "c a b"}}})");
  CHECK(s.graph().spaces.size() == 2);
  CHECK(validate_system(s).ok());
  CHECK_FALSE(error_of(R"({"absolute": {
      "vertices": ["p", "q"],
      "edges": {"a": ["p", "q"], "b": ["q", "p"]},
      "images": {"a": "a", "b": "a"}}})").empty());
}

TEST_CASE("documents round trip") {
  for (const System& s : {testing::fixture_a(), testing::fixture_c()}) {
    const std::string once = to_document(s);
    const std::string twice = to_document(testing::load(once));
    CHECK(once == twice);
  }
}

TEST_CASE("document options") {
  const SystemDocument d = parse_document(
      R"({"rose": {"a": "ab", "b": "a"}, "options": {"max_v_entries": 10, "max_image_length": 99}})");
  REQUIRE(d.options.max_v_entries.has_value());
  CHECK(*d.options.max_v_entries == 10);
  CHECK(*d.options.max_image_length == 99);
  CHECK_FALSE(d.options.max_iterations.has_value());
}
