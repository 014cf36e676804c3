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

// The finite sets V(f^t) of two-branch paths whose f^t-image cancels at the
// tip far enough to reach the last edge of both branches.

#ifndef TTGOS_VSETS_HPP_
#define TTGOS_VSETS_HPP_

#include <cstdint>
#include <optional>
#include <vector>

#include "ttgos/context.hpp"

namespace ttgos {

// eta = reversed(branch1) * tip * branch2; both branches start in the vertex
// space of the tip and point away from it.
struct VEntry {
  EdgePath branch1;
  LocalPath tip;
  EdgePath branch2;
  std::uint64_t common = 0;  // L
  std::size_t reach1 = 0;    // edges of branch_i reached by the cancellation
  std::size_t reach2 = 0;

  EdgePath eta() const { return join(reversed(branch1), tip, branch2); }
  std::size_t length() const { return branch1.length() + branch2.length(); }
  std::size_t tip_index() const { return branch1.length() - 1; }
  // Ordering and equality ignore the witness fields.
  bool operator<(const VEntry& o) const;
  bool operator==(const VEntry& o) const;
};

// Swaps the branches when that gives the smaller eta.
VEntry canonical(VEntry e);
// Splits eta at connector `tip_index`.
VEntry split_at(const EdgePath& eta, std::size_t tip_index);

std::optional<VEntry> v_membership(Context& ctx, int t, const EdgePath& branch1,
                                   const LocalPath& tip, const EdgePath& branch2);
std::optional<VEntry> v_membership(Context& ctx, int t, const EdgePath& eta, std::size_t tip_index);

struct VLimits {
  std::size_t max_entries = 200'000;
  std::size_t max_length = 256;
};

// Sorted, canonically oriented.
std::vector<VEntry> enumerate_v(Context& ctx, int t, const VLimits& limits = {});

// Shrinks a truncated entry back into V(f^t) by dropping terminal edges from
// the branch with the longer image.
VEntry trim_to_v(Context& ctx, int t, const EdgePath& branch1, const LocalPath& tip,
                 const EdgePath& branch2);

std::string to_string(const GraphOfSpaces& g, const VEntry& e);

}  // namespace ttgos

#endif  // TTGOS_VSETS_HPP_
