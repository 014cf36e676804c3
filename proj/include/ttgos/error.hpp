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

#ifndef TTGOS_ERROR_HPP_
#define TTGOS_ERROR_HPP_

#include <stdexcept>
#include <string>

namespace ttgos {

enum class ErrorKind {
  kStructural,  // malformed input: bad names, endpoint mismatches
  kDomain,      // operation called outside its domain
  kHypothesis,  // map is not an expanding train track / not injective
  kCapacity,    // a configured resource cap was exceeded
  kInternal,    // an invariant that the theory guarantees did not hold
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}
  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) {
  throw Error(kind, what);
}

}  // namespace ttgos

#endif  // TTGOS_ERROR_HPP_
