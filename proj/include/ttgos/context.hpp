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

#ifndef TTGOS_CONTEXT_HPP_
#define TTGOS_CONTEXT_HPP_

#include "ttgos/gos.hpp"
#include "ttgos/groupoid.hpp"
#include "ttgos/streams.hpp"
#include "ttgos/turns.hpp"

namespace ttgos {

// The per-system state shared by the later stages: folded vertex maps, the
// illegal turns and the power tables. Not thread-safe.
struct Context {
  explicit Context(const System& s)
      : system(s), oracle(s), closure(illegal_turn_closure(s, oracle)), tables(s) {}
  Context(const Context&) = delete;
  Context& operator=(const Context&) = delete;

  const GraphOfSpaces& graph() const { return system.graph(); }

  const System& system;
  GroupoidOracle oracle;
  TurnClosure closure;
  PowerTables tables;
};

}  // namespace ttgos

#endif  // TTGOS_CONTEXT_HPP_
