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

// JSON system documents.
//
// Full form:
//   {"vertex_spaces": {"v": {"vertices": ["o"], "edges": {"x": ["o", "o"]}}},
//    "top_edges": [{"name": "b", "from": "v:o", "to": "v:o"}],
//    "morphism": {"vertex_maps": {"v": {"target": "v", "vertices": {"o": "o"},
//                                       "edges": {"x": "x"}}},
//                 "edge_maps": {"b": "b {x} b"}},
//    "options": {"max_image_length": 5000000}}
//
// Shorthands: {"rose": {"a": "ab", "b": "a"}} for a rose with point vertex
// and {"absolute": {"vertices": [...], "edges": {"a": ["p", "q"]},
// "images": {"a": "a b"}}} for a graph map.

#ifndef TTGOS_DOCUMENT_HPP_
#define TTGOS_DOCUMENT_HPP_

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include "ttgos/gos.hpp"

namespace ttgos {

struct DocumentOptions {
  std::optional<std::uint64_t> max_image_length;
  std::optional<std::uint64_t> max_v_entries;
  std::optional<std::uint64_t> max_v_length;
  std::optional<std::uint64_t> max_iterations;
};

struct SystemDocument {
  GraphOfSpaces graph;
  GosMorphism morphism;
  DocumentOptions options;
};

// Throws kStructural with the JSON location of the first problem.
SystemDocument parse_document(std::string_view json_text);

// Full-form document for a system.
std::string to_document(const System& s, int indent = 2);

}  // namespace ttgos

#endif  // TTGOS_DOCUMENT_HPP_
