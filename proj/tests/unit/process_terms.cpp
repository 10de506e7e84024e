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

namespace {

RecSpecPtr spec_of(const std::string& body, const SpecFile& f) {
  const Proc t = parse_term("rec X where {" + body + "}", f);
  return t.spec();
}

// Right-hand side of X in a spec that also declares Y.
Proc rhs_of(const std::string& body, const SpecFile& f) {
  return spec_of("X = " + body + ", Y = [true] -> epsilon", f)->rhs("X");
}

}  // namespace

TEST_SUITE("process_terms") {
  const SpecFile f = test::context();

  TEST_CASE("summands") {
    CHECK(summands(Proc::delta()).empty());
    const Proc g = test::term("[true] -> epsilon", f);
    REQUIRE(summands(g).size() == 1);
    CHECK(summands(g).front() == g);
    const Proc e = parse_term("rec X where { X = [v = 0] -> a . X + [w = 1] -> epsilon }", f);
    const auto ss = summands(e.spec()->rhs("X"));
    REQUIRE(ss.size() == 2);
    CHECK(ss[0] == Proc::guard(parse_condition("v = 0", f),
                               Proc::seq(test::term("a", f), Proc::recvar("X"))));
    CHECK(ss[1] == test::term("[w = 1] -> epsilon", f));
  }

  TEST_CASE("linear terms") {
    CHECK(is_linear(Proc::delta()));
    CHECK(is_linear(rhs_of("[true] -> a . X + [false] -> epsilon", f)));
    CHECK_FALSE(is_linear(test::term("a . b", f)));
    CHECK_FALSE(is_linear(Proc::seq(test::term("a", f), Proc::alt(Proc::recvar("X"), Proc::recvar("X")))));
  }

  TEST_CASE("summands reassemble into a linear term") {
    const Proc t = rhs_of("[true] -> a . X + [v = 1] -> s(v) . Y + [w = 0] -> epsilon", f);
    CHECK(is_linear(alt_of(summands(t))));
    CHECK(summands(alt_of(summands(t))) == summands(t));
  }

  TEST_CASE("guarded linear specifications") {
    CHECK(is_guarded_linear_spec(*spec_of("X = [true] -> a . X", f)));
    CHECK(is_guarded_linear_spec(*spec_of("X = [true] -> a . Y, Y = [true] -> epsilon", f)));
    const RecSpec tau_loop(
        {{"X", Proc::guard(Cond::truth(), Proc::seq(Proc::action(Action::tau()), Proc::recvar("X")))}});
    CHECK_FALSE(is_guarded_linear_spec(tau_loop));
    CHECK(unguarded_cycle(tau_loop) == std::vector<std::string>{"X"});
  }

  TEST_CASE("a tau cycle is not admitted as a recursion constant") {
    CHECK_THROWS_AS((void)parse_term("rec X where { X = [true] -> tau . X }", f), Error);
  }

  TEST_CASE("reachability") {
    CHECK(reachable(*spec_of("X = [true] -> a . X", f), "X") == std::set<std::string>{"X"});
    const SpecFile div = parse_spec("domain -16..15; vars i, j, q, r;");
    const Proc d = parse_term(
        "rec Q where { Q = [r >= j] -> q := q + 1 . R + [r < j] -> epsilon,"
        " R = [true] -> r := r - j . Q }", div);
    CHECK(reachable(*d.spec(), "Q") == std::set<std::string>{"Q", "R"});
    const auto e = spec_of("X = [true] -> epsilon, Y = [true] -> a . X", f);
    CHECK(reachable(*e, "X") == std::set<std::string>{"X"});
    CHECK(reachable(*e, "Y") == std::set<std::string>{"X", "Y"});
  }

  TEST_CASE("reachable sets stay inside the specification and grow with it") {
    const auto small = spec_of("X = [true] -> a . Y, Y = [true] -> b . X", f);
    const auto big = spec_of("X = [true] -> a . Y, Y = [true] -> b . X + [true] -> c . Z,"
                             " Z = [true] -> epsilon", f);
    const auto vars = big->vars();
    for (const auto& v : small->vars()) {
      const auto rs = reachable(*small, v), rb = reachable(*big, v);
      for (const auto& x : rs) CHECK(rb.count(x) == 1);
      for (const auto& x : rb) CHECK(std::find(vars.begin(), vars.end(), x) != vars.end());
    }
  }

  TEST_CASE("classification") {
    CHECK_FALSE(classify(test::term("hide{a}(a)", f), f.sig).abstraction_free);
    CHECK(classify(test::term("a . b", f), f.sig).abstraction_free);
    CHECK(classify(test::term("[v = v] -> a", f), f.sig).bool_conditional);
    CHECK_FALSE(classify(test::term("[v = 0] -> a", f), f.sig).bool_conditional);
    CHECK_FALSE(classify(Proc::seq(test::term("a", f), Proc::recvar("X")), f.sig).closed);
  }

  TEST_CASE("communication table validation") {
    CHECK_THROWS_AS((void)parse_spec("actions a, b, c; comm { a|b = c; c|c = a; }"), Error);
    CHECK_NOTHROW((void)parse_spec("actions a, b, c; comm { a|b = c; }"));
    const SpecFile g = parse_spec("actions a, b, c; comm { a|b = c; }");
    CHECK(g.sig.comm.lookup("b", "a") == std::optional<std::string>("c"));
    CHECK_FALSE(g.sig.comm.lookup("a", "a").has_value());
  }

  TEST_CASE("positions address subterms") {
    const Proc t = test::term("a . (b + c)", f);
    CHECK(subterm(t, {1, 0}) == test::term("b", f));
    const Proc u = replace_at(t, {1, 0}, test::term("c", f));
    CHECK(u == test::term("a . (c + c)", f));
    CHECK(difference_position(t, u) == std::optional<Position>(Position{1, 0}));
    CHECK_FALSE(difference_position(t, t).has_value());
    CHECK(term_size(t) == 5);
    CHECK(term_depth(t) == 3);
  }

  TEST_CASE("structural equality and hashing agree") {
    TermGenerator g(f.sig, TermGenConfig{}, 41);
    for (int n = 0; n < 300; ++n) {
      const Proc t = g.term(4);
      const Proc u = parse_term(render(t), f);
      CHECK(t == u);
      CHECK(t.hash() == u.hash());
      CHECK_FALSE(t < u);
    }
  }
}
