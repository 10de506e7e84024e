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
#include "deacp/generator.hpp"
#include "support.hpp"

using namespace deacp;

TEST_SUITE("conditions") {
  const SpecFile sub = parse_spec("domain -16..15; vars d, i, j;");
  const SpecFile f = test::context();
  const Carrier& car = f.sig.carrier;
  const std::size_t bound = 1u << 20;

  TEST_CASE("comparison under a map") {
    const EvalMap s({{"d", 11}, {"i", 11}, {"j", 3}});
    CHECK(eval_cond(parse_condition("d >= j", sub), s, sub.sig.carrier));
    CHECK_FALSE(eval_cond(parse_condition("d < j", sub), s, sub.sig.carrier));
  }

  TEST_CASE("constants") {
    const EvalMap s({{"v", 2}, {"w", 0}});
    CHECK(eval_cond(Cond::truth(), s, car));
    CHECK_FALSE(eval_cond(Cond::falsity(), s, car));
  }

  TEST_CASE("quantifiers range over the carrier") {
    for (const auto& s : enumerate_maps(f.sig.vars, car, bound)) {
      CHECK(eval_cond(parse_condition("exists x. x = v", f), s, car));
      CHECK(eval_cond(parse_condition("forall x. x >= -4", f), s, car));
      CHECK_FALSE(eval_cond(parse_condition("forall x. x > -4", f), s, car));
      CHECK(eval_cond(parse_condition("forall x. exists y. y = x", f), s, car));
    }
  }

  TEST_CASE("validity and satisfiability examples") {
    const auto& d = f.sig.vars;
    CHECK(valid_iff(parse_condition("v >= 0 or v < 0", f), Cond::truth(), d, car, bound));
    CHECK_FALSE(valid_iff(parse_condition("v = 0", f), Cond::falsity(), d, car, bound));
    const Cond phi = parse_condition("v < w -> w > v", f);
    CHECK(valid_iff(phi, phi, d, car, bound));
    CHECK(valid(phi, d, car, bound));
    CHECK_FALSE(satisfiable(Cond::falsity(), d, car, bound));
    CHECK(satisfiable(parse_condition("v = 3", f), d, car, bound));
    CHECK_FALSE(satisfiable(parse_condition("v < v", f), d, car, bound));
  }

  TEST_CASE("connectives follow classical semantics") {
    TermGenerator g(f.sig, TermGenConfig{}, 17);
    const auto maps = enumerate_maps(f.sig.vars, car, bound);
    for (int n = 0; n < 200; ++n) {
      const Cond p = g.cond(3), q = g.cond(3);
      for (const auto& s : maps) {
        const bool x = eval_cond(p, s, car), y = eval_cond(q, s, car);
        CHECK(eval_cond(Cond::negate(p), s, car) == !x);
        CHECK(eval_cond(Cond::conj(p, q), s, car) == (x && y));
        CHECK(eval_cond(Cond::disj(p, q), s, car) == (x || y));
        CHECK(eval_cond(Cond::implies(p, q), s, car) == (!x || y));
        CHECK(eval_cond(Cond::iff(p, q), s, car) == (x == y));
      }
    }
  }

  TEST_CASE("validity agrees with re-enumeration") {
    TermGenerator g(f.sig, TermGenConfig{}, 29);
    const auto maps = enumerate_maps(f.sig.vars, car, bound);
    for (int n = 0; n < 300; ++n) {
      const Cond p = g.cond(3), q = g.cond(2);
      bool same = true, any = false;
      for (const auto& s : maps) {
        same = same && eval_cond(p, s, car) == eval_cond(q, s, car);
        any = any || eval_cond(p, s, car);
      }
      CHECK(valid_iff(p, q, f.sig.vars, car, bound) == same);
      CHECK(satisfiable(p, f.sig.vars, car, bound) == any);
      CHECK(satisfiable(p, f.sig.vars, car, bound) ==
            !valid_iff(p, Cond::falsity(), f.sig.vars, car, bound));
    }
  }

  TEST_CASE("printing and parsing a condition round-trips") {
    TermGenerator g(f.sig, TermGenConfig{}, 31);
    for (int n = 0; n < 200; ++n) {
      const Cond p = g.cond(3);
      CHECK(parse_condition(to_string(p), f) == p);
    }
  }

  TEST_CASE("bound variables outside their quantifier are rejected") {
    CHECK_THROWS_AS((void)parse_condition("x = 1", f), Error);
    CHECK_THROWS_AS((void)parse_condition("v = ", f), Error);
  }
}
