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

#ifndef TTGOS_TESTS_HELPERS_HPP_
#define TTGOS_TESTS_HELPERS_HPP_

#include <fstream>
#include <sstream>
#include <string>

#include "ttgos/document.hpp"

namespace testing {

inline std::string read_file(const std::string& name) {
  std::ifstream in(std::string(TTGOS_TEST_DATA) + "/" + name);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline ttgos::System load(const std::string& json) {
  ttgos::SystemDocument d = ttgos::parse_document(json);
  return ttgos::System(std::move(d.graph), std::move(d.morphism));
}

// "abC" -> "a b C"
inline std::string spaced(const std::string& w) {
  std::string out;
  for (char c : w) {
    if (!out.empty()) out.push_back(' ');
    out.push_back(c);
  }
  return out;
}

inline ttgos::System fixture_a() { return load(read_file("fixture_a.json")); }
inline ttgos::System fixture_c() { return load(read_file("fixture_c.json")); }

// Path text without connectors as a compact word ("C e" -> "Ce").
inline std::string compact(const std::string& s) {
  std::string r;
  for (char c : s) {
    if (c != ' ') r.push_back(c);
  }
  return r;
}

}  // namespace testing

#endif  // TTGOS_TESTS_HELPERS_HPP_
