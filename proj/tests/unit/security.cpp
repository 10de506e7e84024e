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

#include <doctest.h>

#include "deacp/errors.hpp"
#include "deacp/security.hpp"
#include "support.hpp"

using namespace deacp;

namespace {

SecuritySpec from_file(const SpecFile& f, const std::string& proc = "P") {
  return SecuritySpec{f.proc(proc), f.security->low, f.security->ext};
}

const char* kLeak =
    "vars h; actions send/1;"
    " proc P = [h = 0] -> send(0) + [not (h = 0)] -> send(1);";

}  // namespace

TEST_SUITE("security") {
  TEST_CASE("derived sets of a low copy") {
    const SpecFile f = parse_spec(
        "domain -4..3; vars l, h; actions send/1; proc P = send(l) . h := 0;"
        " security { low = {l}; ext = {send/1} }");
    const DerivedSets d = derive_sets(from_file(f), f.sig);
    CHECK(d.high == std::set<std::string>{"h"});
    CHECK(d.internal == std::set<Action>{Action::assign("h", Data::literal(0))});
    CHECK(d.encapsulated.empty());
  }

  TEST_CASE("communicating actions are encapsulated") {
    const SpecFile f = parse_spec(
        "actions a, ab, c; comm { a|ab = c; } proc P = a . ab;"
        " security { low = {}; ext = {} }");
    const DerivedSets d = derive_sets(from_file(f), f.sig);
    CHECK(d.encapsulated == std::set<Action>{Action::basic("a"), Action::basic("ab")});
  }

  TEST_CASE("inaction has no derived sets") {
    const SpecFile f = parse_spec(
        "vars h; actions a; proc P = delta; security { low = {}; ext = {a} }");
    const DerivedSets d = derive_sets(from_file(f), f.sig);
    CHECK(d.high.empty());
    CHECK(d.internal.empty());
    CHECK(d.encapsulated.empty());
  }

  TEST_CASE("malformed security declarations") {
    CHECK_THROWS_AS((void)parse_spec("vars h; actions a; proc P = a; security { low = {zz}; ext = {a} }"),
                    Error);
    const SpecFile ok = parse_spec("vars h; actions a; proc P = a; security { low = {}; ext = {a} }");
    SecuritySpec s = from_file(ok);
    s.low = {"zz"};
    CHECK_THROWS_AS((void)derive_sets(s, ok.sig), Error);
    CHECK_THROWS_AS((void)parse_spec("vars h; actions a; proc P = a; security { low = {}; ext = {*} }"),
                    Error);
    s.low = {};
    s.ext = ActionSet::all();
    CHECK_THROWS_AS((void)derive_sets(s, ok.sig), Error);
  }

  TEST_CASE("a leak through a guarded send") {
    const SpecFile f = parse_spec(std::string("domain 0..1; ") + kLeak +
                                  " security { low = {}; ext = {send/1} }");
    const DniiVerdict v = check_dnii(from_file(f), f.sig);
    CHECK_FALSE(v.holds);
    REQUIRE(v.sigma.has_value());
    REQUIRE(v.sigma_prime.has_value());
    CHECK(v.sigma->at("h") == 0);
    CHECK(v.sigma_prime->at("h") == 1);
    REQUIRE(v.counterexample.has_value());

    // The reported pair really is distinguished, in either order.
    const SecuritySpec s = from_file(f);
    const DerivedSets d = derive_sets(s, f.sig);
    const Proc x = observable(s, d, *v.sigma), y = observable(s, d, *v.sigma_prime);
    CHECK_FALSE(compare_terms(x, y, f.sig).equivalent);
    CHECK_FALSE(compare_terms(y, x, f.sig).equivalent);
    CHECK(compare_terms(x, x, f.sig).equivalent);
  }

  TEST_CASE("the leak at the wider carrier") {
    const SpecFile f = parse_spec(std::string("domain -4..3; ") + kLeak +
                                  " security { low = {}; ext = {send/1} }");
    const DniiVerdict v = check_dnii(from_file(f), f.sig);
    CHECK_FALSE(v.holds);
    REQUIRE(v.sigma.has_value());
    CHECK((v.sigma->at("h") == 0) != (v.sigma_prime->at("h") == 0));
  }

  TEST_CASE("copying a low variable is safe") {
    const SpecFile f = parse_spec(
        "domain -4..3; vars l, h; actions send/1; proc P = send(l) . h := h + 1;"
        " security { low = {l}; ext = {send/1} }");
    const DniiVerdict v = check_dnii(from_file(f), f.sig);
    CHECK(v.holds);
    CHECK(v.comparisons > 0);
    CHECK_FALSE(v.counterexample.has_value());
  }

  TEST_CASE("nothing external means nothing leaks") {
    const SpecFile f = parse_spec(std::string("domain 0..1; ") + kLeak +
                                  " security { low = {}; ext = {} }");
    CHECK(check_dnii(from_file(f), f.sig).holds);
  }

  TEST_CASE("no high variables means nothing leaks") {
    const SpecFile f = parse_spec(
        "domain 0..1; vars l; actions send/1; proc P = [l = 0] -> send(0) + send(l);"
        " security { low = {l}; ext = {send/1} }");
    CHECK(check_dnii(from_file(f), f.sig).holds);
  }

  TEST_CASE("verdicts agree with a pairwise oracle") {
    const SpecFile f = parse_spec(
        "domain 0..1; vars l, h; actions send/1, a;"
        " proc P1 = send(l) . ([h = l] -> a + [not h = l] -> a);"
        " proc P2 = [h = 1] -> send(l) + [h = 0] -> send(0);"
        " proc P3 = h := l . send(h);"
        " security { low = {l}; ext = {send/1, a} }");
    for (const char* name : {"P1", "P2", "P3"}) {
      const SecuritySpec s = from_file(f, name);
      const DerivedSets d = derive_sets(s, f.sig);
      bool all = true;
      for (Value l : {0, 1})
        for (Value h1 : {0, 1})
          for (Value h2 : {0, 1}) {
            const EvalMap a({{"h", h1}, {"l", l}}), b({{"h", h2}, {"l", l}});
            all = all && compare_terms(observable(s, d, a), observable(s, d, b), f.sig).equivalent;
          }
      CHECK_MESSAGE(check_dnii(s, f.sig).holds == all, name);
    }
  }

  TEST_CASE("enlarging the external set keeps a leak") {
    const SpecFile f = parse_spec(std::string("domain 0..1; ") + kLeak +
                                  " actions log/1; security { low = {}; ext = {send/1} }");
    SecuritySpec s = from_file(f);
    s.ext = ActionSet({{ActionSet::Pattern::Kind::NameArity, "send", 1},
                       {ActionSet::Pattern::Kind::NameArity, "log", 1}});
    CHECK_FALSE(check_dnii(s, f.sig).holds);
  }
}
