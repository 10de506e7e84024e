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

#include "deacp/generator.hpp"
#include "deacp/sos.hpp"
#include "deacp/sos_cond.hpp"
#include "support.hpp"

using namespace deacp;

TEST_SUITE("sos_cond") {
  const SpecFile f = test::context();
  const SpecFile bin = parse_spec("domain 0..1; vars v; actions a;");

  CondTable table_for(const SpecFile& s) {
    return CondTable(enumerate_maps(s.sig.vars, s.sig.carrier, 1u << 20), s.sig.carrier);
  }

  TEST_CASE("a guarded action carries its guard") {
    CondTable tab = table_for(f);
    const auto ss = step_cond(test::term("[v = 1] -> a", f), f.sig, tab);
    REQUIRE(ss.size() == 1);
    CHECK(valid_iff(ss[0].cond, parse_condition("v = 1", f), f.sig.vars, f.sig.carrier, 1u << 20));
    CHECK(ss[0].action == Action::basic("a"));
    CHECK(ss[0].target == Proc::epsilon());
  }

  TEST_CASE("unsatisfiable labels are pruned") {
    CondTable tab = table_for(f);
    CHECK(step_cond(test::term("[false] -> a", f), f.sig, tab).empty());
    CHECK(step_cond(test::term("[v < v] -> a", f), f.sig, tab).empty());
  }

  TEST_CASE("an unguarded action is labelled true") {
    CondTable tab = table_for(f);
    const auto ss = step_cond(test::term("a", f), f.sig, tab);
    REQUIRE(ss.size() == 1);
    CHECK(ss[0].cond.is_true());
  }

  TEST_CASE("termination conditions") {
    CondTable tab = table_for(f);
    const auto e = terminates_cond(Proc::epsilon(), f.sig, tab);
    REQUIRE(e.size() == 1);
    CHECK(e[0].is_true());
    const auto g = terminates_cond(test::term("[v = 0] -> epsilon", f), f.sig, tab);
    REQUIRE(g.size() == 1);
    CHECK(valid_iff(g[0], parse_condition("v = 0", f), f.sig.vars, f.sig.carrier, 1u << 20));
    CHECK(terminates_cond(Proc::delta(), f.sig, tab).empty());
  }

  TEST_CASE("expansion instantiates the guard") {
    const CondLts c = build_cond_lts(parse_term("[v = 0] -> a", bin), bin.sig.vars, bin.sig);
    const SigmaLts s = expand_to_sigma(c, bin.sig);
    REQUIRE(s.transitions.size() == 1);
    CHECK(s.maps[s.transitions[0].map] == EvalMap({{"v", 0}}));
  }

  TEST_CASE("expansion of an unguarded action covers every map") {
    const CondLts c = build_cond_lts(parse_term("a", bin), bin.sig.vars, bin.sig);
    const SigmaLts s = expand_to_sigma(c, bin.sig);
    CHECK(s.transitions.size() == 2);
  }

  TEST_CASE("expansion agrees with the map-labelled semantics") {
    TermGenerator g(f.sig, TermGenConfig{}, 77);
    for (int n = 0; n < 200; ++n) {
      const Proc t = g.term(4);
      const SigmaLts direct = build_lts(t, f.sig);
      const CondLts c = build_cond_lts(t, direct.decl, f.sig);
      CHECK_MESSAGE(isomorphic(direct, expand_to_sigma(c, f.sig)), render(t));
      for (const auto& tr : c.transitions)
        CHECK(satisfiable(tr.cond, c.decl, f.sig.carrier, 1u << 20));
      for (const auto& tm : c.terminating)
        CHECK(satisfiable(tm.cond, c.decl, f.sig.carrier, 1u << 20));
    }
  }

  TEST_CASE("isomorphism notices a difference") {
    const SigmaLts x = build_lts(parse_term("a . a", bin), bin.sig);
    const SigmaLts y = build_lts(parse_term("a + a . a", bin), bin.sig);
    CHECK_FALSE(isomorphic(x, y));
    CHECK(isomorphic(x, x));
  }
}
