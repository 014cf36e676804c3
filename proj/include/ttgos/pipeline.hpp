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

// Command-level orchestration: one Session per input document, one JSON
// report per command. Reports use ordered keys and sorted collections so the
// serialized form is byte-stable.

#ifndef TTGOS_PIPELINE_HPP_
#define TTGOS_PIPELINE_HPP_

#include <json.hpp>
#include <memory>
#include <optional>
#include <string>
#include <string_view>

#include "ttgos/document.hpp"
#include "ttgos/fixed.hpp"

namespace ttgos {

using Report = nlohmann::ordered_json;

struct SessionOptions {
  std::uint64_t max_image_length = 5'000'000;
  std::size_t max_v_entries = 200'000;
  std::size_t max_v_length = 256;
  std::optional<std::uint64_t> max_iterations;  // default: derived from the bounds
  int max_power = 64;
};

class Session {
 public:
  // Parses and builds the system; throws kStructural on malformed input.
  // Caps come from `defaults`, then the document, then `overrides`.
  explicit Session(std::string_view document, const SessionOptions& defaults = {},
                   const DocumentOptions& overrides = {});
  ~Session();
  Session(const Session&) = delete;
  Session& operator=(const Session&) = delete;

  const System& system() const { return *system_; }
  const SessionOptions& options() const { return options_; }

  Report validate();
  Report profile();
  Report illegal_turns();
  Report special_turns(int t);
  Report vset(int t);
  Report bounds();
  Report inp();
  Report legalize(std::string_view path);
  Report classify(std::string_view loop);
  // power 0 builds X* at the least power fixing every INP; see XStarOptions.
  Report fixed(std::string_view vertex, int power = 0);
  Report growth();
  Report whitehead();
  Report gos_build();
  Report report();

  Context& context();
  const InpAnalysis& analysis();

 private:
  // Throws kHypothesis or kStructural for a failed validation.
  void require_valid();

  SessionOptions options_;
  std::unique_ptr<System> system_;
  std::unique_ptr<Context> context_;
  std::optional<InpAnalysis> analysis_;
  bool validated_ = false;
};

// Error kind matching a failed validate() report, if it failed.
std::optional<ErrorKind> validation_failure(const Report& validate_report);

// Indented key/value rendering of a report.
std::string render_text(const Report& r);

}  // namespace ttgos

#endif  // TTGOS_PIPELINE_HPP_
