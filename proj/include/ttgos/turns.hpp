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

// Turns, their images and preimages, and the set of illegal turns.

#ifndef TTGOS_TURNS_HPP_
#define TTGOS_TURNS_HPP_

#include <map>
#include <set>
#include <string>
#include <vector>

#include "ttgos/gos.hpp"
#include "ttgos/groupoid.hpp"

namespace ttgos {

// e * chi * e' with e entering and e' leaving the vertex space of chi.
struct Turn {
  Edge in = 0;
  LocalPath connector;
  Edge out = 0;
  auto operator<=>(const Turn&) const = default;
};

Turn reverse(const Turn& t);
// The smaller of t and reverse(t).
Turn canonical(const Turn& t);
Turn make_turn(Edge in, LocalPath connector, Edge out);
bool degenerate(const Turn& t);
// Turn at the junction after edges[i].
Turn turn_at(const EdgePath& p, std::size_t i);
std::string to_string(const GraphOfSpaces& g, const Turn& t);

Turn image_turn(const System& s, const Turn& t);
std::vector<Turn> preimage_turns(const System& s, GroupoidOracle& oracle, const Turn& t);

struct TurnClosure {
  std::map<Turn, int> illegal;  // canonical turn -> degeneration time
  int t0 = 0;

  bool is_illegal(const Turn& t) const { return illegal.count(canonical(t)) != 0; }
  int num_nondegenerate() const;
  // Illegal turns used by a path (junction by junction).
  int ilt(const EdgePath& p) const;
  int ilt(const ClosedPath& p) const;
  bool legal(const EdgePath& p) const { return ilt(p) == 0; }
};

// Breadth-first preimage closure seeded at the degenerate turns.
TurnClosure illegal_turn_closure(const System& s, GroupoidOracle& oracle,
                                 std::size_t max_turns = 1'000'000);

// Turns used by f^t(e) over all edges e, together with f^t-images of the
// turns inside inessential vertex spaces.
std::set<Turn> special_turns(const System& s, int t);

// Legal turns that map to a t-special turn under f^t.
std::set<Turn> allowed_turns(const System& s, GroupoidOracle& oracle, const TurnClosure& c, int t);

struct MapProfile {
  bool train_track = false;
  bool expanding = false;
  int t_exp = 0;                         // meaningful when expanding
  std::vector<std::string> illegal_images;  // edges whose image is illegal
  std::vector<std::string> stuck_edges;     // edges of constant length 1
};

MapProfile map_profile(const System& s, const TurnClosure& c);

}  // namespace ttgos

#endif  // TTGOS_TURNS_HPP_
