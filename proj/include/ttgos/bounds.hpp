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

// Cancellation and iteration constants derived from V(f).

#ifndef TTGOS_BOUNDS_HPP_
#define TTGOS_BOUNDS_HPP_

#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>
#include <string>
#include <vector>

#include "ttgos/context.hpp"
#include "ttgos/vsets.hpp"

namespace ttgos {

using Rational = boost::multiprecision::cpp_rational;

struct BoundsReport {
  std::uint64_t C = 0;  // longest entry of V(f)
  int t_exp = 0;
  std::uint64_t lambda_min = 0;
  std::uint64_t lambda_max = 0;
  Rational C_prime;
  Rational C_1;
  int t0 = 0;
  int t_1 = 0;
  int t_hat = 0;
};

std::string to_string(const Rational& r);

// Throws kHypothesis unless f is an expanding train track map. `v1` is
// V(f), computed when not supplied.
BoundsReport compute_bounds(Context& ctx, const std::vector<VEntry>* v1 = nullptr);

}  // namespace ttgos

#endif  // TTGOS_BOUNDS_HPP_
