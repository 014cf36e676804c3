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

// Exercises libttgos through its C header only.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <fstream>
#include <json.hpp>
#include <sstream>
#include <string>
#include <thread>

#include "ttgos/ttgos.h"

namespace {

std::string read_data(const std::string& name) {
  std::ifstream in(std::string(TTGOS_TEST_DATA) + "/" + name);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

struct Session {
  explicit Session(const std::string& doc, const ttgos_options* o = nullptr) {
    status = ttgos_open(doc.c_str(), o, &handle);
  }
  ~Session() { ttgos_close(handle); }
  // Runs a command; returns the status and stores the output.
  ttgos_status run(const char* cmd, const char* arg = nullptr, ttgos_format f = TTGOS_FORMAT_JSON) {
    char* out = nullptr;
    const ttgos_status st = ttgos_run(handle, cmd, arg, f, &out);
    output = out ? out : "";
    ttgos_free_string(out);
    return st;
  }
  ttgos_session* handle = nullptr;
  ttgos_status status = TTGOS_OK;
  std::string output;
};

}  // namespace

TEST_CASE("version") { CHECK(std::string(ttgos_version()) == "0.1.0"); }

TEST_CASE("bounds of fixture A through the C API") {
  Session s(read_data("fixture_a.json"));
  REQUIRE(s.status == TTGOS_OK);
  REQUIRE(s.run("bounds") == TTGOS_OK);
  const auto j = nlohmann::json::parse(s.output);
  CHECK(j["lambda_min"] == 10);
  CHECK(j["lambda_max"] == 27);
  CHECK(j["C"] == 4);
  CHECK(j["C_1"] == "112/9");
  CHECK(j["t_hat"] == 5);
  CHECK(std::string(ttgos_last_error()).empty());
}

TEST_CASE("commands with arguments") {
  Session s(read_data("fixture_a.json"));
  REQUIRE(s.run("vset", "1") == TTGOS_OK);
  CHECK(nlohmann::json::parse(s.output)["count"] == 8);
  REQUIRE(s.run("classify", "C e") == TTGOS_OK);
  CHECK(nlohmann::json::parse(s.output)["fixed"] == true);
  REQUIRE(s.run("fixed", "v") == TTGOS_OK);
  CHECK(nlohmann::json::parse(s.output)["generators"] == nlohmann::json::array({"C e", "d F"}));
  REQUIRE(s.run("legalize", "a B c") == TTGOS_OK);
  REQUIRE(s.run("inp", nullptr, TTGOS_FORMAT_TEXT) == TTGOS_OK);
  CHECK(s.output.find("t_hat") != std::string::npos);
}

TEST_CASE("status codes") {
  SUBCASE("malformed document") {
    ttgos_session* h = nullptr;
    CHECK(ttgos_open("{", nullptr, &h) == TTGOS_ERR_PARSE);
    CHECK(h == nullptr);
    CHECK_FALSE(std::string(ttgos_last_error()).empty());
  }
  SUBCASE("null arguments") {
    CHECK(ttgos_open(nullptr, nullptr, nullptr) == TTGOS_ERR_ARGUMENT);
    char* out = nullptr;
    CHECK(ttgos_run(nullptr, "bounds", nullptr, TTGOS_FORMAT_JSON, &out) == TTGOS_ERR_ARGUMENT);
    CHECK(out == nullptr);
  }
  SUBCASE("unknown command and bad argument") {
    Session s(read_data("fixture_a.json"));
    CHECK(s.run("frobnicate") == TTGOS_ERR_ARGUMENT);
    CHECK(s.run("vset", "zero") == TTGOS_ERR_ARGUMENT);
    CHECK(s.run("legalize", "a q") == TTGOS_ERR_PARSE);
  }
  SUBCASE("hypothesis") {
    Session s(R"({"rose": {"a": "a", "b": "ab"}})");
    REQUIRE(s.status == TTGOS_OK);
    CHECK(s.run("bounds") == TTGOS_ERR_HYPOTHESIS);
  }
  SUBCASE("capacity") {
    ttgos_options o{};
    o.max_v_entries = 2;
    Session s(read_data("fixture_a.json"), &o);
    CHECK(s.run("vset", "1") == TTGOS_ERR_CAPACITY);
    CHECK(std::string(ttgos_last_error()).find("max_entries") != std::string::npos);
  }
  SUBCASE("domain") {
    Session s(read_data("fixture_c.json"));
    CHECK(s.run("growth") == TTGOS_ERR_DOMAIN);
  }
}

TEST_CASE("report is byte-stable") {
  Session a(read_data("fixture_a.json"));
  Session b(read_data("fixture_a.json"));
  REQUIRE(a.run("report") == TTGOS_OK);
  REQUIRE(b.run("report") == TTGOS_OK);
  CHECK(a.output == b.output);
}

TEST_CASE("sessions on separate threads") {
  std::string out1, out2;
  std::string err1, err2;
  std::thread t1([&] {
    Session s(read_data("fixture_a.json"));
    s.run("inp");
    out1 = s.output;
    s.run("frobnicate");
    err1 = ttgos_last_error();
  });
  std::thread t2([&] {
    Session s(read_data("fixture_a.json"));
    s.run("inp");
    out2 = s.output;
    err2 = ttgos_last_error();
  });
  t1.join();
  t2.join();
  CHECK(out1 == out2);
  CHECK_FALSE(err1.empty());
  CHECK(err2.empty());
}
