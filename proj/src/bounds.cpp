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

#include "ttgos/bounds.hpp"

#include <algorithm>

namespace ttgos {

std::string to_string(const Rational& r) {
  const auto num = boost::multiprecision::numerator(r);
  const auto den = boost::multiprecision::denominator(r);
  if (den == 1) return num.str();
  return num.str() + "/" + den.str();
}

BoundsReport compute_bounds(Context& ctx, const std::vector<VEntry>* v1) {
  const MapProfile prof = map_profile(ctx.system, ctx.closure);
  if (!prof.train_track) fail(ErrorKind::kHypothesis, "map is not a train track map");
  if (!prof.expanding) fail(ErrorKind::kHypothesis, "map is not expanding");
  BoundsReport r;
  r.t0 = ctx.closure.t0;
  r.t_exp = prof.t_exp;
  std::vector<VEntry> own;
  if (v1 == nullptr) {
    own = enumerate_v(ctx, 1);
    v1 = &own;
  }
  for (const VEntry& e : *v1) r.C = std::max<std::uint64_t>(r.C, e.length());

  const int n = ctx.graph().num_oriented_edges();
  r.lambda_min = kSaturated;
  for (Edge e = 0; e < n; e += 2) {
    const std::uint64_t len = ctx.tables.length(e, r.t_exp);
    r.lambda_min = std::min(r.lambda_min, len);
    r.lambda_max = std::max(r.lambda_max, len);
  }
  using boost::multiprecision::cpp_int;
  const cpp_int lmax = r.lambda_max;
  cpp_int power = 1;
  for (int i = 0; i < r.t_exp; ++i) power *= lmax;
  r.C_prime = Rational(cpp_int(r.C) * (power - 1), lmax - 1);
  r.C_1 = r.C_prime / Rational(cpp_int(r.lambda_min) - 1);

  // least t with |f^t(e)| > C_1 for every edge
  for (int t = 1;; ++t) {
    bool all = true;
    for (Edge e = 0; e < n && all; e += 2) {
      all = Rational(cpp_int(ctx.tables.length(e, t))) > r.C_1;
    }
    if (all) {
      r.t_1 = t;
      break;
    }
    if (t > 64 * (r.t_exp + 1)) fail(ErrorKind::kInternal, "no power exceeds C_1");
  }
  r.t_hat = r.t_1 + 2 * r.t0;
  return r;
}

}  // namespace ttgos
