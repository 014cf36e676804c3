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

#include "ttgos/ttgos.h"

#include <charconv>
#include <cstdlib>
#include <cstring>
#include <new>
#include <string>

#include "ttgos/pipeline.hpp"

struct ttgos_session {
  std::unique_ptr<ttgos::Session> session;
};

namespace {

thread_local std::string last_error;

// Bad command names or arguments supplied by the caller.
struct ArgumentError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

ttgos_status status_of(ttgos::ErrorKind k) {
  switch (k) {
    case ttgos::ErrorKind::kStructural: return TTGOS_ERR_PARSE;
    case ttgos::ErrorKind::kHypothesis: return TTGOS_ERR_HYPOTHESIS;
    case ttgos::ErrorKind::kCapacity: return TTGOS_ERR_CAPACITY;
    case ttgos::ErrorKind::kDomain: return TTGOS_ERR_DOMAIN;
    case ttgos::ErrorKind::kInternal: return TTGOS_ERR_INTERNAL;
  }
  return TTGOS_ERR_INTERNAL;
}

template <typename F>
ttgos_status guarded(F&& f) {
  try {
    f();
    last_error.clear();
    return TTGOS_OK;
  } catch (const ttgos::Error& e) {
    last_error = e.what();
    return status_of(e.kind());
  } catch (const ArgumentError& e) {
    last_error = e.what();
    return TTGOS_ERR_ARGUMENT;
  } catch (const std::bad_alloc&) {
    last_error = "out of memory";
    return TTGOS_ERR_CAPACITY;
  } catch (const std::exception& e) {
    last_error = e.what();
    return TTGOS_ERR_INTERNAL;
  }
}

int power_arg(const char* arg) {
  int t = 0;
  const char* end = arg ? arg + std::strlen(arg) : nullptr;
  if (!arg || std::from_chars(arg, end, t).ptr != end || t < 1) {
    throw ArgumentError("power must be a positive integer");
  }
  return t;
}

std::string need(const char* arg, const char* what) {
  if (!arg || !*arg) throw ArgumentError(std::string("missing ") + what);
  return arg;
}

char* copy_out(const std::string& s) {
  char* p = static_cast<char*>(std::malloc(s.size() + 1));
  if (!p) throw std::bad_alloc();
  std::memcpy(p, s.c_str(), s.size() + 1);
  return p;
}

}  // namespace

extern "C" {

ttgos_status ttgos_open(const char* document, const ttgos_options* options, ttgos_session** out) {
  if (!document || !out) {
    last_error = "null argument";
    return TTGOS_ERR_ARGUMENT;
  }
  *out = nullptr;
  return guarded([&] {
    ttgos::SessionOptions defaults;
    ttgos::DocumentOptions overrides;
    if (options) {
      if (options->max_image_length) overrides.max_image_length = options->max_image_length;
      if (options->max_v_entries) overrides.max_v_entries = options->max_v_entries;
      if (options->max_v_length) overrides.max_v_length = options->max_v_length;
      if (options->max_iterations) overrides.max_iterations = options->max_iterations;
      if (options->max_power > 0) defaults.max_power = options->max_power;
    }
    auto s = std::make_unique<ttgos_session>();
    s->session = std::make_unique<ttgos::Session>(document, defaults, overrides);
    *out = s.release();
  });
}

void ttgos_close(ttgos_session* session) { delete session; }

ttgos_status ttgos_run(ttgos_session* session, const char* command, const char* arg,
                       ttgos_format format, char** out) {
  if (!session || !command || !out) {
    last_error = "null argument";
    return TTGOS_ERR_ARGUMENT;
  }
  *out = nullptr;
  const std::string cmd = command;
  ttgos::Session& s = *session->session;
  ttgos::Report r;
  bool known = true;
  ttgos_status failed = TTGOS_OK;
  std::string message;
  const ttgos_status st = guarded([&] {
    if (cmd == "validate") r = s.validate();
    else if (cmd == "profile") r = s.profile();
    else if (cmd == "turns-illegal") r = s.illegal_turns();
    else if (cmd == "turns-special") r = s.special_turns(power_arg(arg));
    else if (cmd == "vset") r = s.vset(power_arg(arg));
    else if (cmd == "bounds") r = s.bounds();
    else if (cmd == "inp") r = s.inp();
    else if (cmd == "legalize") r = s.legalize(need(arg, "path"));
    else if (cmd == "classify") r = s.classify(need(arg, "loop"));
    else if (cmd == "fixed") {
      const std::string a = need(arg, "vertex");
      const std::size_t gap = a.find(' ');
      r = gap == std::string::npos ? s.fixed(a) : s.fixed(a.substr(0, gap), power_arg(a.c_str() + gap + 1));
    }
    else if (cmd == "growth") r = s.growth();
    else if (cmd == "whitehead") r = s.whitehead();
    else if (cmd == "gos-build") r = s.gos_build();
    else if (cmd == "report") r = s.report();
    else known = false;
    if (known) *out = copy_out(format == TTGOS_FORMAT_TEXT ? ttgos::render_text(r) : r.dump(2) + "\n");
    if (cmd == "validate") {
      if (const auto kind = ttgos::validation_failure(r)) {
        failed = status_of(*kind);
        message = r["violations"][0].get<std::string>();
      }
    }
  });
  if (!known) {
    last_error = "unknown command '" + cmd + "'";
    return TTGOS_ERR_ARGUMENT;
  }
  if (st == TTGOS_OK && failed != TTGOS_OK) {
    last_error = message;
    return failed;
  }
  return st;
}

const char* ttgos_last_error(void) { return last_error.c_str(); }

void ttgos_free_string(char* s) { std::free(s); }

const char* ttgos_version(void) { return "0.1.0"; }

}  // extern "C"
