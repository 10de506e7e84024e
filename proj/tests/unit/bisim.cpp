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

#include "deacp/axioms.hpp"
#include "deacp/bisim.hpp"
#include "deacp/pairgen.hpp"
#include "deacp/sos.hpp"
#include "deacp/sos_cond.hpp"
#include "support.hpp"

using namespace deacp;

namespace {

struct Checked {
  BisimResult result;
  SigmaLts left, right;
};

Checked check(const std::string& x, const std::string& y, const SpecFile& f) {
  Checked c;
  c.result = compare_terms(test::term(x, f), test::term(y, f), f.sig, &c.left, &c.right);
  return c;
}

bool rb(const Proc& x, const Proc& y, const Signature& sig) {
  return compare_terms(x, y, sig).equivalent;
}

}  // namespace

TEST_SUITE("bisim") {
  const SpecFile f = test::context();
  const SpecFile bin = parse_spec("domain 0..1; vars v; actions a, b, c;");

  TEST_CASE("action classes") {
    const EvalMap s({{"v", 0}, {"w", 0}});
    const Carrier& car = f.sig.carrier;
    CHECK(action_class(test::term("s(1 + 2)", f).action(), &s, car) ==
          action_class(test::term("s(3)", f).action(), &s, car));
    CHECK(action_class(test::term("v := 1", f).action(), &s, car) !=
          action_class(test::term("w := 1", f).action(), &s, car));
    CHECK(action_class(Action::tau(), &s, car) != action_class(Action::basic("a"), &s, car));
    CHECK(action_class(test::term("s(v)", f).action(), &s, car) ==
          action_class(test::term("s(0)", f).action(), &s, car));
  }

  TEST_CASE("silent closure") {
    const SigmaLts plain = build_lts(test::term("a", f), FlexVarDecl{}, f.sig);
    CHECK(silent_closure(plain, plain.root, 0) == std::vector<std::size_t>{plain.root});
    const SigmaLts chain = build_lts(test::term("tau . tau . a", f), FlexVarDecl{}, f.sig);
    CHECK(silent_closure(chain, chain.root, 0).size() == 3);
    const SigmaLts g = build_lts(parse_term("[v = 0] -> tau . a", bin), bin.sig);
    REQUIRE(g.maps.size() == 2);
    CHECK(silent_closure(g, g.root, 0).size() == 2);
    CHECK(silent_closure(g, g.root, 1) == std::vector<std::size_t>{g.root});
  }

  TEST_CASE("rooted branching examples") {
    CHECK(check("a + delta", "a", f).result.equivalent);
    CHECK(check("a . (tau . (b + c) + b)", "a . (b + c)", f).result.equivalent);
    const Checked d = check("a . b", "a . c", f);
    REQUIRE_FALSE(d.result.equivalent);
    REQUIRE(d.result.counterexample.has_value());
    CHECK_FALSE(d.result.counterexample->at_root);
    CHECK(d.result.counterexample->trace.size() == 1);
    CHECK(replay_counterexample(d.left, d.right, *d.result.counterexample, f.sig.carrier));
  }

  TEST_CASE("the root condition") {
    const Checked d = check("tau . a", "a", f);
    REQUIRE_FALSE(d.result.equivalent);
    CHECK(d.result.counterexample->at_root);
    CHECK(check("a . tau . b", "a . b", f).result.equivalent);
    CHECK_FALSE(check("a + tau . b", "a + b", f).result.equivalent);
  }

  TEST_CASE("data equivalence of actions") {
    CHECK_FALSE(check("v := 1 . s(v)", "v := 1 . s(1)", f).result.equivalent);
    CHECK(check("eval{v = 0}(v := 1 . s(v))", "v := 1 . s(1)", f).result.equivalent);
    CHECK(check("eval{v = 2}(v := v + 1 . s(v))", "v := 3 . s(3)", f).result.equivalent);
    CHECK(check("s(v)", "[v = 1] -> s(1) + [not v = 1] -> s(v)", f).result.equivalent);
  }

  TEST_CASE("ab-bisimulation examples") {
    const Proc x = parse_term("[v = 0 or v = 1] -> a", f);
    const Proc y = parse_term("[v = 0] -> a + [v = 1] -> a", f);
    CHECK(compare_terms_ab(x, y, f.sig).equivalent);
    CHECK(rb(x, y, f.sig));
    CHECK_FALSE(compare_terms_ab(test::term("a + tau . b", f), test::term("a + b", f), f.sig)
                    .equivalent);
    const Proc t = test::term("a . (b || c)", f);
    CHECK(compare_terms_ab(t, t, f.sig).equivalent);
  }

  TEST_CASE("witnesses verify and counterexamples replay on a random corpus") {
    TermGenerator g(f.sig, TermGenConfig{}, 101);
    int eq = 0, neq = 0;
    for (int n = 0; n < 300; ++n) {
      const Proc x = g.term(3);
      const Proc y = n % 3 ? g.term(3) : x;
      SigmaLts l1, l2;
      const BisimResult r = compare_terms(x, y, f.sig, &l1, &l2);
      std::string why;
      if (r.equivalent) {
        ++eq;
        CHECK_MESSAGE(verify_witness(l1, l2, r.relation, f.sig.carrier, &why), why);
        CHECK(std::is_sorted(r.relation.begin(), r.relation.end()));
      } else {
        ++neq;
        REQUIRE(r.counterexample.has_value());
        CHECK(replay_counterexample(l1, l2, *r.counterexample, f.sig.carrier));
      }
    }
    CHECK(eq > 50);
    CHECK(neq > 50);
  }

  TEST_CASE("a tampered witness is rejected") {
    const Checked c = check("a . b", "a . b + delta", f);
    REQUIRE(c.result.equivalent);
    auto rel = c.result.relation;
    rel.pop_back();
    CHECK_FALSE(verify_witness(c.left, c.right, rel, f.sig.carrier));
  }

  TEST_CASE("equivalence relation on a corpus") {
    TermGenerator g(f.sig, TermGenConfig{}, 55);
    std::vector<Proc> pool;
    for (int n = 0; n < 20; ++n) pool.push_back(g.term(2));
    pool.push_back(test::term("a", f));
    pool.push_back(test::term("a + delta", f));
    pool.push_back(test::term("a + a", f));
    const std::size_t m = pool.size();
    std::vector<std::vector<bool>> e(m, std::vector<bool>(m));
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = 0; j < m; ++j) e[i][j] = rb(pool[i], pool[j], f.sig);
    for (std::size_t i = 0; i < m; ++i) {
      CHECK(e[i][i]);
      for (std::size_t j = 0; j < m; ++j) {
        CHECK(e[i][j] == e[j][i]);
        for (std::size_t k = 0; k < m; ++k)
          if (e[i][j] && e[j][k]) CHECK(e[i][k]);
      }
    }
  }

  TEST_CASE("congruence spot checks") {
    const Signature sig = generator_signature();
    PairGenConfig pc;
    PairGenerator pg(sig, pc, 8);
    TermGenerator& g = pg.terms();
    for (int n = 0; n < 60; ++n) {
      const GeneratedPair p = pg.next();
      const Proc u = g.term(2);
      const ActionSet h = g.action_set();
      const Cond phi = g.cond(2);
      const EvalMap m = g.map();
      const std::vector<std::pair<Proc, Proc>> contexts{
          {Proc::alt(p.lhs, u), Proc::alt(p.rhs, u)},
          {Proc::seq(u, p.lhs), Proc::seq(u, p.rhs)},
          {Proc::seq(p.lhs, u), Proc::seq(p.rhs, u)},
          {Proc::par(p.lhs, u), Proc::par(p.rhs, u)},
          {Proc::leftmerge(u, p.lhs), Proc::leftmerge(u, p.rhs)},
          {Proc::commmerge(p.lhs, u), Proc::commmerge(p.rhs, u)},
          {Proc::encap(h, p.lhs), Proc::encap(h, p.rhs)},
          {Proc::abstr(h, p.lhs), Proc::abstr(h, p.rhs)},
          {Proc::guard(phi, p.lhs), Proc::guard(phi, p.rhs)},
          {Proc::eval(m, p.lhs), Proc::eval(m, p.rhs)},
      };
      REQUIRE(rb(p.lhs, p.rhs, sig));
      for (const auto& [x, y] : contexts) CHECK_MESSAGE(rb(x, y, sig), render(x) << "  vs  " << render(y));
    }
  }

  TEST_CASE("signature refinement agrees on tau-free systems") {
    const Signature sig = generator_signature();
    TermGenConfig cfg;
    cfg.tau = false;
    cfg.abstraction = false;
    TermGenerator g(sig, cfg, 202);
    int compared = 0;
    for (int n = 0; n < 300; ++n) {
      const Proc x = g.term(3);
      const Proc y = n % 2 ? g.term(3) : Proc::alt(x, x);
      SigmaLts l1, l2;
      const BisimResult r = compare_terms(x, y, sig, &l1, &l2);
      ++compared;
      CHECK(signature_bisim(l1, l2, sig.carrier) == r.equivalent);
    }
    CHECK(compared == 300);
  }

  TEST_CASE("rb and ab agree on sound axiom instances and on distinguishable pairs") {
    const Signature sig = generator_signature();
    for (const auto& ax : axiom_catalogue()) {
      if (ax.name == "CM1E" || ax.name == "BED") continue;
      TermGenerator g(sig, TermGenConfig{}, 13);
      for (int n = 0; n < 5; ++n) {
        const AxiomInstance in = ax.instance(g);
        CHECK_MESSAGE(rb(in.lhs, in.rhs, sig), ax.name);
        CHECK_MESSAGE(compare_terms_ab(in.lhs, in.rhs, sig).equivalent, ax.name);
      }
    }
    for (const char* x : {"a", "b", "c"})
      for (const char* y : {"a", "b", "c"}) {
        if (std::string(x) == y) continue;
        const Proc p = Proc::seq(test::term("a", f), test::term(x, f));
        const Proc q = Proc::seq(test::term("a", f), test::term(y, f));
        CHECK_FALSE(rb(p, q, f.sig));
        CHECK_FALSE(compare_terms_ab(p, q, f.sig).equivalent);
      }
  }

  TEST_CASE("conjecture experiment") {
    const Signature sig = generator_signature();
    ConjectureConfig none;
    none.pairs = 0;
    const ConjectureReport empty = conjecture_experiment(none, sig);
    CHECK(empty.decided() == 0);
    CHECK(empty.divergent.empty());
    ConjectureConfig some;
    some.pairs = 120;
    const ConjectureReport r = conjecture_experiment(some, sig);
    CHECK(r.decided() + r.skipped == 120);
    CHECK(r.both_equivalent > 0);
    CHECK(r.both_inequivalent > 0);
    CHECK(r.divergent.size() == r.rb_only + r.ab_only);
  }
}
