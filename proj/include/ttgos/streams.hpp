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

// Lazy traversal of iterated images f^t(path) and the cancellation at the
// tip of a two-branch path.

#ifndef TTGOS_STREAMS_HPP_
#define TTGOS_STREAMS_HPP_

#include <cstdint>
#include <optional>
#include <vector>

#include "ttgos/gos.hpp"

namespace ttgos {

constexpr std::uint64_t kSaturated = UINT64_MAX;
std::uint64_t sat_add(std::uint64_t a, std::uint64_t b);
std::uint64_t sat_mul(std::uint64_t a, std::uint64_t b);

// |f^t(e)| together with the lead/trail local paths of f^t(e), for t up to a
// bound that grows on demand.
class PowerTables {
 public:
  explicit PowerTables(const System& s) : system_(&s) {}
  void ensure(int t);
  std::uint64_t length(Edge e, int t);
  const LocalPath& lead(Edge e, int t);
  const LocalPath& trail(Edge e, int t);
  std::uint64_t length(const EdgePath& p, int t);
  const System& system() const { return *system_; }

 private:
  const System* system_;
  std::vector<std::vector<std::uint64_t>> len_;  // [t][e]
  std::vector<std::vector<LocalPath>> lead_;     // [t][e]
  std::vector<std::vector<LocalPath>> trail_;
};

// Edges of f^t(path) one at a time, with the connector in front of each edge
// (absent for the first).
class ImageStream {
 public:
  ImageStream(PowerTables& tables, EdgePath path, int t);
  ImageStream(const ImageStream&) = delete;
  ImageStream& operator=(const ImageStream&) = delete;

  struct Item {
    Edge edge = 0;
    std::optional<LocalPath> before;
  };
  std::optional<Item> next();
  // The next unexpanded block f^level(edge), with the connector in front of
  // its first edge; nullopt at the end.
  struct Block {
    Edge edge = 0;
    int level = 0;
    const std::optional<LocalPath>* before = nullptr;
  };
  std::optional<Block> block();
  // Replaces the next block by the blocks of its image; level must be > 0.
  void expand();
  // Skips n edges; cheaper than calling next() n times.
  void skip(std::uint64_t n);
  std::uint64_t position() const { return pos_; }
  PowerTables& tables() const { return *tables_; }

 private:
  struct Frame {
    const EdgePath* path;
    std::size_t idx;
    int level;
  };
  LocalPath junction(const Frame& f, std::size_t i);
  void settle();

  PowerTables* tables_;
  EdgePath root_;
  std::vector<Frame> stack_;
  std::optional<LocalPath> pend_;
  std::uint64_t pos_ = 0;
};

// Length of the longest common prefix of two streams, connectors included.
// Equal blocks are skipped whole. Both streams are left at that position.
std::uint64_t common_prefix(ImageStream& a, ImageStream& b);

// Materialized f^t(path) as an unreduced edge path; throws kCapacity beyond
// max_length edges.
EdgePath image_power(PowerTables& tables, const EdgePath& p, int t,
                     std::uint64_t max_length = 5'000'000);

// The same endpoint seen from the reversed edge.
Locus flip_locus(PowerTables& tables, const Locus& l);
// Occurrence index of the fixed point l at `power`, a multiple of l.power.
std::uint64_t lift_occurrence(PowerTables& tables, const Locus& l, int power);

// Cancellation at the tip of gamma1-bar * chi * gamma2 under f^t.
struct Backtrack {
  bool tip_contracts = false;  // connector at the tip of f^t(eta) is trivial
  std::uint64_t common = 0;    // L: edges cancelled on each side
  std::uint64_t image1 = 0;    // |f^t(gamma1)|
  std::uint64_t image2 = 0;
  std::uint64_t before_last1 = 0;  // |f^t(gamma1)| - |f^t(last edge)|
  std::uint64_t before_last2 = 0;
  std::size_t reach1 = 0;  // edges of gamma1 touched by the cancellation
  std::size_t reach2 = 0;
  bool consumed1() const { return common == image1; }
  bool consumed2() const { return common == image2; }
};

Backtrack backtrack(PowerTables& tables, const EdgePath& branch1, const LocalPath& tip,
                    const EdgePath& branch2, int t);

}  // namespace ttgos

#endif  // TTGOS_STREAMS_HPP_
