/*
 * Copyright 2026 The deacp Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

// Exercises the shared library through its C header only.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>
#include <json.hpp>

#include <cstring>
#include <fstream>
#include <sstream>
#include <string>

#include "deacp.h"

using nlohmann::json;

namespace {

std::string read_data(const char* name) {
  std::ifstream in(std::string(DEACP_TEST_DATA) + "/" + name);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

struct Spec {
  deacp_spec* p = nullptr;
  explicit Spec(const std::string& text, const deacp_options* o = nullptr) {
    REQUIRE(deacp_spec_parse(text.c_str(), o, &p) == DEACP_OK);
  }
  ~Spec() { deacp_spec_free(p); }
};

struct Result {
  deacp_result* p = nullptr;
  ~Result() { deacp_result_free(p); }
  json parsed() const { return json::parse(deacp_result_json(p)); }
};

}  // namespace

TEST_SUITE("capi") {
  TEST_CASE("version and status names") {
    CHECK(std::strlen(deacp_version()) > 0);
    CHECK(std::string(deacp_status_name(DEACP_OK)) == "ok");
    CHECK(std::string(deacp_status_name(DEACP_ERR_SYNTAX)).size() > 0);
  }

  TEST_CASE("syntax errors carry a position") {
    deacp_spec* s = nullptr;
    CHECK(deacp_spec_parse("actions a;\nproc P = a .;", nullptr, &s) == DEACP_ERR_SYNTAX);
    CHECK(s == nullptr);
    CHECK(std::string(deacp_last_error()).rfind("2:", 0) == 0);
  }

  TEST_CASE("null arguments") {
    deacp_spec* s = nullptr;
    CHECK(deacp_spec_parse(nullptr, nullptr, &s) == DEACP_ERR_ARGUMENT);
    CHECK(deacp_spec_parse("actions a;", nullptr, nullptr) == DEACP_ERR_ARGUMENT);
    deacp_result* r = nullptr;
    CHECK(deacp_bisim(nullptr, "P", "Q", 0, &r) == DEACP_ERR_ARGUMENT);
    deacp_spec_free(nullptr);
    deacp_result_free(nullptr);
  }

  TEST_CASE("declaration errors and unknown processes") {
    deacp_spec* s = nullptr;
    CHECK(deacp_spec_parse("actions a; proc P = b;", nullptr, &s) == DEACP_ERR_DECLARATION);
    Spec ok("actions a; proc P = a;");
    Result r;
    CHECK(deacp_lts(ok.p, "Nope", 0, &r.p) == DEACP_ERR_USAGE);
    CHECK(r.p == nullptr);
  }

  TEST_CASE("domain and its override") {
    Spec plain("domain 0..5; vars v;");
    long lo = 0, hi = 0;
    REQUIRE(deacp_spec_domain(plain.p, &lo, &hi) == DEACP_OK);
    CHECK(lo == 0);
    CHECK(hi == 5);
    deacp_options o{1, -4, 3, 0};
    Spec over("domain 0..5; vars v;", &o);
    REQUIRE(deacp_spec_domain(over.p, &lo, &hi) == DEACP_OK);
    CHECK(lo == -4);
    CHECK(hi == 3);
  }

  TEST_CASE("bisimulation verdicts and deterministic JSON") {
    Spec s("actions a, b; proc P = a + delta; proc Q = a; proc R = b;");
    Result yes, again, no;
    REQUIRE(deacp_bisim(s.p, "P", "Q", 0, &yes.p) == DEACP_OK);
    REQUIRE(deacp_bisim(s.p, "P", "Q", 0, &again.p) == DEACP_OK);
    REQUIRE(deacp_bisim(s.p, "P", "R", 0, &no.p) == DEACP_OK);
    CHECK(deacp_result_verdict(yes.p) == 1);
    CHECK(deacp_result_verdict(no.p) == 0);
    CHECK(std::string(deacp_result_json(yes.p)) == deacp_result_json(again.p));
    CHECK(yes.parsed()["equivalent"] == true);
    CHECK(yes.parsed().contains("witness"));
    CHECK(no.parsed().contains("counterexample"));
    Result ab;
    REQUIRE(deacp_bisim(s.p, "P", "Q", 1, &ab.p) == DEACP_OK);
    CHECK(deacp_result_verdict(ab.p) == 1);
  }

  TEST_CASE("LTS export") {
    Spec s("actions a, b; proc P = a . b;");
    Result r, c;
    REQUIRE(deacp_lts(s.p, "P", 0, &r.p) == DEACP_OK);
    const json j = r.parsed();
    CHECK(j["states"].size() == 3);
    CHECK(j["transitions"].size() == 2);
    CHECK(j["terminating"].size() == 1);
    REQUIRE(deacp_lts(s.p, "P", 1, &c.p) == DEACP_OK);
    CHECK(c.parsed()["transitions"][0]["cond"] == "true");
  }

  TEST_CASE("exploration bound") {
    deacp_options o{0, 0, 0, 2};
    Spec s("actions a; proc P = a . a . a;", &o);
    Result r;
    CHECK(deacp_lts(s.p, "P", 0, &r.p) == DEACP_ERR_EXPLORATION_LIMIT);
  }

  TEST_CASE("proving the subtraction example") {
    Spec s(read_data("subtraction.deacp"));
    Result r;
    REQUIRE(deacp_prove(s.p, "Sub", "Chain", &r.p) == DEACP_OK);
    CHECK(deacp_result_verdict(r.p) == 1);
    CHECK(r.parsed()["certificate"]["steps"].size() > 0);
    CHECK(std::string(deacp_result_text(r.p)).find("d := 11 . d := 8") != std::string::npos);
  }

  TEST_CASE("linearization and CFAR") {
    Spec s(read_data("cfar.deacp"));
    Result lin, cf, bad;
    REQUIRE(deacp_linearize(s.p, "Hidden", &lin.p) == DEACP_OK);
    CHECK(lin.parsed()["cfar"].size() >= 1);
    REQUIRE(deacp_cfar(s.p, "E", "X", "a", &cf.p) == DEACP_OK);
    CHECK(cf.parsed()["cluster"] == json::array({"X", "Y"}));
    CHECK(cf.parsed()["exits"].size() == 2);
    CHECK(deacp_cfar(s.p, "E", "Q", "a", &bad.p) != DEACP_OK);
    CHECK(deacp_cfar(s.p, "Nope", "X", "a", &bad.p) != DEACP_OK);
  }

  TEST_CASE("non-interference") {
    Spec leak(read_data("leak.deacp"));
    Spec copy(read_data("lowcopy.deacp"));
    Result a, b;
    REQUIRE(deacp_dnii(leak.p, "P", &a.p) == DEACP_OK);
    REQUIRE(deacp_dnii(copy.p, "P", &b.p) == DEACP_OK);
    CHECK(deacp_result_verdict(a.p) == 0);
    CHECK(a.parsed().contains("sigma"));
    CHECK(a.parsed().contains("sigma_prime"));
    CHECK(deacp_result_verdict(b.p) == 1);
  }

  TEST_CASE("conjecture report") {
    Result r;
    REQUIRE(deacp_conjecture(40, 1, -4, 3, &r.p) == DEACP_OK);
    CHECK(r.parsed()["pairs"] == 40);
    CHECK(deacp_result_verdict(r.p) == 1);
  }
}
