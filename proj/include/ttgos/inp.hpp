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

// Indivisible periodic paths (INPs), the self-map of V(f^t) u {star} that
// carries them, and legalization of arbitrary paths.

#ifndef TTGOS_INP_HPP_
#define TTGOS_INP_HPP_

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "ttgos/bounds.hpp"
#include "ttgos/context.hpp"
#include "ttgos/vsets.hpp"

namespace ttgos {

// A two-branch path with an illegal tip. Branches point away from the tip.
struct PseudoInp {
  EdgePath branch1;
  LocalPath tip;
  EdgePath branch2;

  EdgePath eta() const { return join(reversed(branch1), tip, branch2); }
};

// Splits eta at connector `tip_index` and checks the pseudo-INP conditions.
PseudoInp make_pseudo_inp(const Context& ctx, const EdgePath& eta, std::size_t tip_index);

// The part of eta whose f^t-image cancels at the tip, by whole edges; an end
// is marked partial when the cancellation stops strictly inside that edge.
struct BacktrackCore {
  PartialPath path;
  std::uint64_t common = 0;
  bool legalized = false;  // the tip turn of [f^t(eta)] is legal or a branch is consumed
};

BacktrackCore backtracking_core(Context& ctx, const PseudoInp& eta, int t);

struct LegalMarker {
  int exponent = 0;
  auto operator<=>(const LegalMarker&) const = default;
};

using Prolongation = std::variant<LegalMarker, VEntry>;

// Either the first exponent t <= t_hat at which the tip legalizes, or the
// vertex-prolongation of the core at stage t_hat.
Prolongation core_prolongation(Context& ctx, const BoundsReport& bounds, const PseudoInp& eta);

// [f(eta)] for an entry of V; nullopt when the result is legal.
std::optional<PseudoInp> reduced_image(Context& ctx, const VEntry& e);

// End of an INP: a vertex, or a point inside the last edge of the branch.
struct InpEnd {
  bool vertex = true;
  Locus locus;  // when !vertex
};

struct InpRecord {
  VEntry prolongation;
  int period = 1;
  InpEnd head;  // end of branch1
  InpEnd tail;  // end of branch2
  bool verified = false;
};

struct InpAnalysis {
  BoundsReport bounds;
  std::vector<VEntry> v;     // V(f^t_hat), sorted; index v.size() is star
  std::vector<std::size_t> fhat;
  std::vector<int> tail;     // per entry, star last
  std::vector<int> period;
  std::vector<InpRecord> inps;
  int t_plus = 0;
  int t_star = 0;
  int t4 = 0;
  std::vector<std::string> diagnostics;

  std::size_t star() const { return v.size(); }
};

struct InpOptions {
  VLimits limits;
  std::uint64_t max_image_length = 5'000'000;
  int max_period_multiple = 8;  // multiples of the f-hat period tried by verification
};

InpAnalysis compute_inps(Context& ctx, const InpOptions& options = {});

// Checks the INP alignment of a periodic entry under f^period.
InpRecord verify_inp(Context& ctx, const VEntry& e, int period,
                     std::uint64_t max_image_length = 5'000'000);

// ---------------------------------------------------------------------------
// Legalization.

// A piece of a decomposition, by edge index range; the end edges may be
// shared with the neighbouring piece when an INP ends inside an edge.
struct Piece {
  bool inp = false;
  int record = -1;  // index into InpAnalysis::inps
  std::size_t first = 0;
  std::size_t last = 0;  // inclusive
  bool head_partial = false;
  bool tail_partial = false;
};

struct Decomposition {
  bool pseudo_legal = false;
  std::vector<Piece> pieces;
};

// Tests whether p is a legal concatenation of legal paths and INPs.
Decomposition pseudo_legal_decomposition(Context& ctx, const InpAnalysis& a, const EdgePath& p);
Decomposition pseudo_legal_decomposition(Context& ctx, const InpAnalysis& a, const ClosedPath& p);

struct Legalization {
  int t = 0;  // t(gamma)
  std::uint64_t cap = 0;
  std::variant<EdgePath, ClosedPath> result;  // [f^t(gamma)]
  bool zero = false;  // gamma reduced to a path inside a vertex space
  Decomposition decomposition;
  std::vector<int> ilt_trace;  // ILT of the reduced iterates 0..t
};

struct LegalizeOptions {
  std::uint64_t max_length = 5'000'000;
  std::optional<std::uint64_t> max_iterations;  // default: the derived cap
};

Legalization legalize(Context& ctx, const InpAnalysis& a, const EdgePath& gamma,
                      const LegalizeOptions& options = {});
Legalization legalize(Context& ctx, const InpAnalysis& a, const ClosedPath& gamma,
                      const LegalizeOptions& options = {});

// Both sides of the decay inequality
//   2 * (ILT([f^t4(gamma)]) - ILT([f^t(gamma)])) <= ILT(gamma) - ILT([f^t(gamma)])
// with t = t(gamma).
struct DecayReport {
  int ilt_before = 0;
  int ilt_after = 0;  // at t(gamma)
  int ilt_t4 = 0;
  int t = 0;
  std::int64_t lhs = 0;
  std::int64_t rhs = 0;
  bool holds = false;
};

DecayReport decay_check(Context& ctx, const InpAnalysis& a, const EdgePath& gamma,
                        const LegalizeOptions& options = {});

}  // namespace ttgos

#endif  // TTGOS_INP_HPP_
