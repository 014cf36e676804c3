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

// ttgos command line: ttgos <command> <document.json> [options]

#include <CLI11.hpp>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "ttgos/ttgos.h"

namespace {

// Exit codes.
constexpr int kOk = 0;
constexpr int kParse = 1;
constexpr int kHypothesis = 2;
constexpr int kCapacity = 3;
constexpr int kInternal = 4;

int exit_code(ttgos_status s) {
  switch (s) {
    case TTGOS_OK: return kOk;
    case TTGOS_ERR_HYPOTHESIS: return kHypothesis;
    case TTGOS_ERR_CAPACITY: return kCapacity;
    case TTGOS_ERR_INTERNAL: return kInternal;
    default: return kParse;
  }
}

bool slurp(const std::string& path, std::string& out) {
  std::ostringstream ss;
  if (path == "-") {
    ss << std::cin.rdbuf();
  } else {
    std::ifstream in(path);
    if (!in) return false;
    ss << in.rdbuf();
  }
  out = ss.str();
  return true;
}

struct Invocation {
  std::string command;
  std::string arg;
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Train track maps on graphs-of-spaces"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(ttgos_version()));

  std::string input;
  std::string format = "json";
  ttgos_options caps{};
  int power = 1;
  int fixed_power = 0;
  std::string path, loop, vertex, kind;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("document", input, "System document (JSON), or - for stdin")->required();
    sub->add_option("--format", format, "Output format")->check(CLI::IsMember({"json", "text"}));
    sub->add_option("--max-image-length", caps.max_image_length, "Cap on materialized path length");
    sub->add_option("--max-v-entries", caps.max_v_entries, "Cap on V-set size");
    sub->add_option("--max-v-length", caps.max_v_length, "Cap on V-set entry length");
    sub->add_option("--max-iterations", caps.max_iterations, "Cap on legalization iterations");
    sub->add_option("--max-power", caps.max_power, "Cap on the power used to build X*");
  };

  Invocation inv;
  auto plain = [&](const char* name, const char* help) {
    CLI::App* sub = app.add_subcommand(name, help);
    add_common(sub);
    sub->callback([&inv, name] { inv.command = name; });
    return sub;
  };

  plain("validate", "Check structure and hypotheses");
  plain("profile", "Train track and expansion profile");
  {
    CLI::App* sub = app.add_subcommand("turns", "Illegal or special turns");
    sub->add_option("kind", kind, "illegal or special")->required()->check(CLI::IsMember({"illegal", "special"}));
    add_common(sub);
    sub->add_option("--power", power, "Power t for special turns")->check(CLI::PositiveNumber);
    sub->callback([&] {
      inv.command = kind == "illegal" ? "turns-illegal" : "turns-special";
      inv.arg = std::to_string(power);
    });
  }
  {
    CLI::App* sub = app.add_subcommand("vset", "Enumerate V(f^t)");
    add_common(sub);
    sub->add_option("--power", power, "Power t")->check(CLI::PositiveNumber);
    sub->callback([&] {
      inv.command = "vset";
      inv.arg = std::to_string(power);
    });
  }
  plain("bounds", "Cancellation and iteration constants");
  plain("inp", "Indivisible periodic paths");
  {
    CLI::App* sub = app.add_subcommand("legalize", "Iterate a path until it is pseudo-legal");
    add_common(sub);
    sub->add_option("--path", path, "Edge path")->required();
    sub->callback([&] {
      inv.command = "legalize";
      inv.arg = path;
    });
  }
  {
    CLI::App* sub = app.add_subcommand("classify", "Classify a conjugacy class");
    add_common(sub);
    sub->add_option("--loop", loop, "Closed path")->required();
    sub->callback([&] {
      inv.command = "classify";
      inv.arg = loop;
    });
  }
  {
    CLI::App* sub = app.add_subcommand("fixed", "Generators of the fixed subgroup");
    add_common(sub);
    sub->add_option("--vertex", vertex, "Base vertex")->required();
    sub->add_option("--power", fixed_power, "Power q of f (default: least power fixing every INP)")
        ->check(CLI::PositiveNumber);
    sub->callback([&] {
      inv.command = "fixed";
      inv.arg = fixed_power > 0 ? vertex + " " + std::to_string(fixed_power) : vertex;
    });
  }
  plain("growth", "Transition matrix and edge growth");
  plain("whitehead", "Whitehead graphs");
  plain("gos-build", "Collapse polynomial edges into vertex spaces");
  plain("report", "Full pipeline");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return e.get_exit_code() == 0 ? 0 : 1;
  }

  std::string document;
  if (!slurp(input, document)) {
    std::cerr << "error: cannot read " << input << '\n';
    return kParse;
  }
  ttgos_session* session = nullptr;
  ttgos_status st = ttgos_open(document.c_str(), &caps, &session);
  if (st != TTGOS_OK) {
    std::cerr << "error: " << ttgos_last_error() << '\n';
    return exit_code(st);
  }
  char* out = nullptr;
  st = ttgos_run(session, inv.command.c_str(), inv.arg.empty() ? nullptr : inv.arg.c_str(),
                 format == "text" ? TTGOS_FORMAT_TEXT : TTGOS_FORMAT_JSON, &out);
  if (out) {
    std::fputs(out, stdout);
    ttgos_free_string(out);
  }
  if (st != TTGOS_OK) std::cerr << "error: " << ttgos_last_error() << '\n';
  ttgos_close(session);
  return exit_code(st);
}
