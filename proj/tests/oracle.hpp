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

// Word-level reference implementations for maps of roses, written directly
// from the definitions and sharing no code with the library. Letters are
// chars; uppercase is the inverse.

#ifndef TTGOS_TESTS_ORACLE_HPP_
#define TTGOS_TESTS_ORACLE_HPP_

#include <map>
#include <random>
#include <set>
#include <string>
#include <vector>

namespace oracle {

char inv(char c);
std::string inv(const std::string& w);
std::string reduce(const std::string& w);

class RoseMap {
 public:
  explicit RoseMap(std::map<char, std::string> images);

  const std::string& letters() const { return letters_; }  // a A b B ...
  std::string image(const std::string& w) const;
  std::string power(const std::string& w, int p) const;
  const std::string& letter_power(char c, int p) const;

  // Turn between two directions (first letters of paths leaving the vertex).
  bool illegal(char d1, char d2) const;
  bool legal(const std::string& w) const;
  // Least t with every |f^t(e)| >= 2, or 0.
  int expansion_exponent(int max_t = 32) const;

  // Entries of V(f): pairs of branches, as "reverse(g1)|g2" normalized so
  // that the string is the smaller of the two orientations.
  std::set<std::string> v_set(int max_depth = 24) const;

  struct Inp {
    std::string path;  // normalized "reverse(g1)|g2"
    int period = 0;
    bool head_vertex = true;  // end of the part left of '|'
    bool tail_vertex = true;
    bool operator<(const Inp& o) const { return path < o.path; }
  };
  // INPs with branches of length <= max_branch and minimal period <= max_period.
  std::vector<Inp> inps(int max_branch, int max_period) const;

  // All legal reduced words of length 1..n.
  std::vector<std::string> legal_words(int n) const;

 private:
  std::map<char, std::string> images_;
  std::string letters_;
  mutable std::map<std::pair<char, int>, std::string> cache_;
};

std::string normalize_pair(const std::string& g1, const std::string& g2);

// Random rose with positive images; rank r, image lengths in [1, max_len].
std::map<char, std::string> random_positive_rose(std::mt19937& rng, int rank, int max_len);

// Random positive automorphism of the free group of rank r: a product of
// moves x_i -> x_i x_j or x_j x_i followed by a permutation of the images.
std::map<char, std::string> random_positive_automorphism(std::mt19937& rng, int rank, int steps,
                                                          std::size_t max_len);

// Whether w lies in the subgroup generated by gens, by folding the wedge of
// generator loops into a Stallings graph and reading w from the base.
bool subgroup_contains(const std::vector<std::string>& gens, const std::string& w);

// {"rose": {...}} document.
std::string rose_document(const std::map<char, std::string>& images);

}  // namespace oracle

#endif  // TTGOS_TESTS_ORACLE_HPP_
